#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace lcw::types {

/// Simple types, PCF types and type templates share this representation.
/// PCF's bool and nat are the base types named "bool" and "nat"; template
/// variables use Kind::Var.
class Type {
  public:
    enum class Kind { Base, Var, Arrow, Product, Unit, Sum, Void };

    static Type base(std::string name);
    static Type var(std::string name);
    static Type arrow(Type dom, Type cod);
    static Type product(Type left, Type right);
    static Type unit();
    static Type sum(Type left, Type right);
    static Type void_type();
    static Type boolean() { return base("bool"); }
    static Type nat() { return base("nat"); }

    Kind kind() const { return node_->kind; }
    bool is(Kind k) const { return kind() == k; }
    bool is_arrow() const { return is(Kind::Arrow); }
    bool is_product() const { return is(Kind::Product); }
    bool is_sum() const { return is(Kind::Sum); }
    const std::string& name() const { return node_->name; }
    const Type& left() const { return node_->kids[0]; }
    const Type& right() const { return node_->kids[1]; }
    const Type& dom() const { return left(); }
    const Type& cod() const { return right(); }
    std::size_t size() const { return node_->size; }
    std::size_t depth() const { return node_->depth; }

    bool operator==(const Type& other) const;
    bool operator!=(const Type& other) const { return !(*this == other); }
    bool operator<(const Type& other) const;

  private:
    struct Node {
        Kind kind;
        std::string name;
        std::vector<Type> kids;
        std::size_t size;
        std::size_t depth;
    };
    explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Type binary(Kind kind, Type l, Type r);
    std::shared_ptr<const Node> node_;
};

/// Right-nested arrow A1 -> ... -> An -> B.
Type arrows(const std::vector<Type>& doms, Type cod);

std::set<std::string> type_vars(const Type& a);
std::set<std::string> base_names(const Type& a);
bool has_sums(const Type& a);
bool occurs(const std::string& var, const Type& a);

/// Unambiguous structural key (distinguishes base types from variables).
std::string type_key(const Type& a);

/// ASCII: `A -> B * 1`; unicode: `A → B × 1`. Product and sum bind tighter
/// than arrow, product tighter than sum; arrow is right associative, product
/// and sum left associative.
std::string to_string(const Type& a, bool unicode = false);

}  // namespace lcw::types

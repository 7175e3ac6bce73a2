#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lcw/reduction_graph.hpp"
#include "lcw/types.hpp"

namespace lcw::typed {

using types::Type;

/// Terms of the simply-typed calculus with products, unit and sums, and of
/// PCF. One representation serves both; each dialect admits a subset of the
/// constructors (see Dialect).
class TypedTerm {
  public:
    enum class Kind {
        Var, App, Abs, Pair, Proj1, Proj2, Star,
        In1, In2, Case, Abort,
        True, False, Zero, Succ, Pred, IsZero, If, Fix, Por,
    };

    static TypedTerm var(std::string name);
    static TypedTerm app(TypedTerm f, TypedTerm a);
    /// `annot` may be omitted for type inference.
    static TypedTerm abs(std::string x, std::optional<Type> annot, TypedTerm body);
    static TypedTerm pair(TypedTerm l, TypedTerm r);
    static TypedTerm proj1(TypedTerm t);
    static TypedTerm proj2(TypedTerm t);
    static TypedTerm star();
    /// `full` is the sum type A + B of the injection.
    static TypedTerm in1(Type full, TypedTerm t);
    static TypedTerm in2(Type full, TypedTerm t);
    static TypedTerm case_of(TypedTerm scrut, std::string x, std::optional<Type> annot_x,
                             TypedTerm left, std::string y, std::optional<Type> annot_y,
                             TypedTerm right);
    static TypedTerm abort(Type target, TypedTerm t);
    static TypedTerm true_c();
    static TypedTerm false_c();
    static TypedTerm zero();
    static TypedTerm succ(TypedTerm t);
    static TypedTerm pred(TypedTerm t);
    static TypedTerm iszero(TypedTerm t);
    static TypedTerm if_then_else(TypedTerm c, TypedTerm n, TypedTerm p);
    static TypedTerm fix(TypedTerm t);
    static TypedTerm por(TypedTerm l, TypedTerm r);

    Kind kind() const { return node_->kind; }
    bool is(Kind k) const { return kind() == k; }
    /// Variable name, abstraction binder, or the left binder of a case.
    const std::string& name() const { return node_->name; }
    /// Right binder of a case.
    const std::string& name2() const { return node_->name2; }
    /// Binder annotation, injection type, abort target, or left case annotation.
    const std::optional<Type>& annot() const { return node_->annot; }
    const std::optional<Type>& annot2() const { return node_->annot2; }
    std::size_t arity() const { return node_->kids.size(); }
    const TypedTerm& child(std::size_t i) const { return node_->kids[i]; }
    const std::vector<TypedTerm>& children() const { return node_->kids; }
    std::size_t size() const { return node_->size; }
    bool same_node(const TypedTerm& other) const { return node_ == other.node_; }

    /// Same constructor, names and annotations with new children.
    TypedTerm with_children(std::vector<TypedTerm> kids) const;
    TypedTerm with_binders(std::string name, std::string name2) const;
    TypedTerm with_annotation(std::optional<Type> annot) const;

    /// The variable bound in child `i`, or nullptr.
    const std::string* binder_for(std::size_t i) const;

  private:
    struct Node {
        Kind kind;
        std::string name;
        std::string name2;
        std::optional<Type> annot;
        std::optional<Type> annot2;
        std::vector<TypedTerm> kids;
        std::size_t size;
    };
    explicit TypedTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static TypedTerm make(Node node);
    std::shared_ptr<const Node> node_;
};

using Kind = TypedTerm::Kind;

TypedTerm apply(TypedTerm f, std::initializer_list<TypedTerm> args);
/// succ^n(zero).
TypedTerm numeral(unsigned long n);
std::optional<unsigned long> as_numeral(const TypedTerm& m);

std::set<std::string> free_vars(const TypedTerm& m);
std::set<std::string> all_names(const TypedTerm& m);
bool is_free_in(const std::string& x, const TypedTerm& m);
/// Nameless key including annotations.
std::string canonical_key(const TypedTerm& m);
bool alpha_eq(const TypedTerm& a, const TypedTerm& b);
/// Capture-avoiding M[N/x] with least-fresh binder renaming.
TypedTerm subst(const TypedTerm& m, const TypedTerm& n, const std::string& x);
/// Replaces the subterm at `path` by `replacement`.
TypedTerm replace_at(const TypedTerm& m, const Path& path, const TypedTerm& replacement);
const TypedTerm& subterm_at(const TypedTerm& m, const Path& path);

/// Typing context; later entries shadow earlier ones.
using Context = std::vector<std::pair<std::string, Type>>;
std::optional<Type> lookup(const Context& ctx, const std::string& x);

enum class Dialect { Stlc, Pcf, ParallelPcf };

class TypeError : public std::runtime_error {
  public:
    TypeError(std::string message, Path path, std::string rule);
    const Path& path() const { return path_; }
    const std::string& rule() const { return rule_; }

  private:
    Path path_;
    std::string rule_;
};

struct Derivation {
    std::string rule;
    Context ctx;
    TypedTerm term;
    Type type;
    std::vector<Derivation> premises;
};

/// The unique type of `m`, or TypeError. Every binder must be annotated.
Type typecheck(const Context& ctx, const TypedTerm& m, Dialect dialect = Dialect::Stlc);
Derivation derive(const Context& ctx, const TypedTerm& m, Dialect dialect = Dialect::Stlc);

}  // namespace lcw::typed

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lcw/reduction_graph.hpp"

namespace lcw::systemf {

/// System F types. Equality is alpha-equivalence of forall binders.
class FType {
  public:
    enum class Kind { Var, Arrow, Forall };

    static FType var(std::string name);
    static FType arrow(FType a, FType b);
    static FType forall(std::string alpha, FType body);

    Kind kind() const { return node_->kind; }
    bool is(Kind k) const { return node_->kind == k; }
    /// Variable name or forall binder.
    const std::string& name() const { return node_->name; }
    const FType& left() const { return node_->kids[0]; }
    const FType& right() const { return node_->kids[1]; }
    const FType& body() const { return node_->kids[0]; }
    std::size_t size() const { return node_->size; }

    bool operator==(const FType& o) const;
    bool operator!=(const FType& o) const { return !(*this == o); }

  private:
    struct Node {
        Kind kind;
        std::string name;
        std::vector<FType> kids;
        std::size_t size;
    };
    explicit FType(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

std::set<std::string> ftv(const FType& a);
/// Every type-variable name occurring in `a`, bound or free.
std::set<std::string> type_names(const FType& a);
/// Nameless key; equal keys iff alpha-equivalent.
std::string type_key(const FType& a);
/// Capture-free A[B/alpha].
FType ftype_subst(const FType& a, const FType& b, const std::string& alpha);

class FTerm {
  public:
    enum class Kind { Var, App, Abs, TyApp, TyAbs };

    static FTerm var(std::string x);
    static FTerm app(FTerm f, FTerm a);
    static FTerm abs(std::string x, FType annot, FTerm body);
    static FTerm tyapp(FTerm f, FType a);
    static FTerm tyabs(std::string alpha, FTerm body);

    Kind kind() const { return node_->kind; }
    bool is(Kind k) const { return node_->kind == k; }
    /// Variable, term binder or type binder.
    const std::string& name() const { return node_->name; }
    /// Binder annotation (Abs) or type argument (TyApp).
    const FType& type() const { return *node_->type; }
    const FTerm& child(std::size_t i) const { return node_->kids[i]; }
    const std::vector<FTerm>& children() const { return node_->kids; }
    std::size_t size() const { return node_->size; }

  private:
    struct Node {
        Kind kind;
        std::string name;
        std::optional<FType> type;
        std::vector<FTerm> kids;
        std::size_t size;
    };
    explicit FTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

FTerm apply(FTerm f, const std::vector<FTerm>& args);

std::set<std::string> free_vars(const FTerm& m);
std::set<std::string> ftv(const FTerm& m);
std::set<std::string> all_names(const FTerm& m);
std::set<std::string> type_names(const FTerm& m);
std::string canonical_key(const FTerm& m);
bool alpha_eq(const FTerm& a, const FTerm& b);
/// Capture-free M[N/x]; renames term and type binders as needed.
FTerm subst(const FTerm& m, const FTerm& n, const std::string& x);
/// Capture-free M[B/alpha].
FTerm type_subst(const FTerm& m, const FType& b, const std::string& alpha);

using FContext = std::vector<std::pair<std::string, FType>>;

/// Unique type or typed::TypeError (rules var, app, abs, typeapp, typeabs).
/// Type abstraction requires alpha not free in any context entry.
FType ftypecheck(const FContext& ctx, const FTerm& m);

struct FReduct {
    FTerm term;
    Path position;
    /// beta, beta-forall, eta, eta-forall.
    std::string rule;
};

/// All one-step reducts, outermost first then children left to right.
std::vector<FReduct> fstep(const FTerm& m, bool include_eta = false);

struct FNormalizeResult {
    FTerm term;
    std::size_t steps;
    bool exhausted;
};

/// Leftmost-outermost beta normalization, then eta steps if requested.
FNormalizeResult fnormalize(const FTerm& m, std::size_t fuel, bool include_eta = false);

using FGraph = ReductionGraph<FTerm>;
FGraph freduction_graph(const FTerm& m, bool include_eta, std::size_t max_vertices, std::size_t max_depth);

/// Beta normal form, eta-expanded until every body has atomic type. Throws
/// TypeError for ill-typed input and UsageError if normalization exceeds fuel.
FTerm long_normal_form(const FTerm& m, const FContext& ctx, std::size_t fuel = 1000000);

struct LongNormalCheck {
    bool ok;
    Path position;
    std::string reason;
};

LongNormalCheck is_long_normal(const FTerm& m, const FContext& ctx);

// Encodings.
FType bool_type();
FType nat_type();
FType tree_type();
FType unit_type();
FType void_type();
FType product_type(const FType& a, const FType& b);
FType sum_type(const FType& a, const FType& b);

FTerm f_numeral(std::size_t n);
/// <M, N> at A x B.
FTerm f_pair(const FType& a, const FType& b, const FTerm& m, const FTerm& n);

struct FEncoding {
    FTerm term;
    FType type;
};

/// T, F, if_then_else, and, or, not, succ, add, mult, pair, proj1, proj2,
/// star, inj1, inj2, case, abort, leaf, branch, and numerals 0..4 (n0..n4),
/// each with its type.
const std::map<std::string, FEncoding>& f_encodings();

/// Replaces free variables named after an encoding, and free variables named
/// by a decimal number, by the corresponding closed term. Each inserted copy
/// has its type abstractions renamed away from the type variables in scope
/// there (context, enclosing annotations, free type variables of `m`), so
/// the typeabs side condition keeps holding.
FTerm with_encodings(const FTerm& m, const FContext& ctx = {});
/// As with_encodings, numerals only.
FTerm expand_numerals(const FTerm& m, const FContext& ctx = {});
/// Renames type abstractions whose variable is free in the context or in the
/// annotation of an enclosing term binder.
FTerm hygienic(const FTerm& m, const FContext& ctx = {});

std::optional<bool> classify_bool(const FTerm& m);
std::optional<std::size_t> classify_nat(const FTerm& m);

/// Leaf-labelled binary tree.
struct LTree {
    std::size_t label = 0;
    std::vector<LTree> kids;

    static LTree leaf(std::size_t n) { return {n, {}}; }
    static LTree branch(LTree l, LTree r) { return {0, {std::move(l), std::move(r)}}; }
    bool is_leaf() const { return kids.empty(); }
    bool operator==(const LTree& o) const {
        return is_leaf() == o.is_leaf() && (is_leaf() ? label == o.label : kids == o.kids);
    }
};

std::string to_string(const LTree& t);
FTerm encode_tree(const LTree& t);
std::optional<LTree> decode_tree(const FTerm& m);

}  // namespace lcw::systemf

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lcw/reduction_graph.hpp"

namespace lcw::untyped {

/// Untyped lambda term. Immutable; copies share structure.
class Term {
  public:
    enum class Kind { Var, App, Abs };

    static Term var(std::string name);
    static Term app(Term fun, Term arg);
    static Term abs(std::string binder, Term body);

    Kind kind() const { return node_->kind; }
    bool is_var() const { return kind() == Kind::Var; }
    bool is_app() const { return kind() == Kind::App; }
    bool is_abs() const { return kind() == Kind::Abs; }

    /// Variable name or binder name.
    const std::string& name() const { return node_->name; }
    const Term& fun() const { return node_->kids[0]; }
    const Term& arg() const { return node_->kids[1]; }
    const Term& body() const { return node_->kids[0]; }

    std::size_t size() const { return node_->size; }

    /// Pointer identity; structural equality is `alpha_eq`.
    bool same_node(const Term& other) const { return node_ == other.node_; }

  private:
    struct Node {
        Kind kind;
        std::string name;
        std::vector<Term> kids;
        std::size_t size;
    };
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Left-nested application `f a1 a2 ...`.
Term apply(Term f, std::initializer_list<Term> args);
/// Nested abstraction `\x1 ... xn. body`.
Term lambda(std::initializer_list<std::string> binders, Term body);

enum class Mode { Beta, Eta, BetaEta };

std::set<std::string> free_vars(const Term& m);
/// Every variable name occurring in `m` (free, bound, or binding).
std::set<std::string> all_names(const Term& m);
bool occurs(const Term& m, const std::string& name);

/// M{y/x}: replaces every occurrence of x (free, bound, binding) by y.
/// Throws UsageError if y occurs in M.
Term rename(const Term& m, const std::string& y, const std::string& x);

/// Canonical nameless form: bound occurrences become binder depths, free
/// variables keep their names. Two terms are alpha-equivalent iff their
/// keys are equal.
std::string canonical_key(const Term& m);
bool alpha_eq(const Term& a, const Term& b);

/// Capture-avoiding M[N/x]. The fresh binder, when one is needed, is the
/// least-suffixed variant of the old binder that occurs in neither term.
Term subst(const Term& m, const Term& n, const std::string& x);

bool is_beta_redex(const Term& m);
/// True for \x. P x with x not free in P.
bool is_eta_redex(const Term& m);

struct Reduct {
    Term term;
    Path position;
};

/// All single-step reducts in leftmost-outermost order.
std::vector<Reduct> step_reducts(const Term& m, Mode mode);

/// Contracts the leftmost-outermost redex, or nullopt if `m` is normal.
std::optional<Term> step_normal_order(const Term& m, Mode mode);

struct NormalizeResult {
    Term term;
    std::size_t steps;
    /// True when the fuel ran out before a normal form was reached; `term`
    /// is then the last term computed.
    bool exhausted;
};

NormalizeResult normalize(const Term& m, Mode mode, std::size_t fuel);

/// Terms with more redex sites than this are refused by parallel_reducts.
inline constexpr std::size_t kParallelRedexLimit = 24;

std::size_t count_redex_sites(const Term& m);

/// {M' | M |> M'} for the parallel one-step reduction, deduplicated up to
/// alpha. Throws UsageError above kParallelRedexLimit redex sites.
std::vector<Term> parallel_reducts(const Term& m,
                                   std::size_t redex_limit = kParallelRedexLimit);

/// M*, every beta redex fired and every eta redex collapsed at once.
Term max_parallel_reduct(const Term& m);

using UntypedGraph = ReductionGraph<Term>;

/// Breadth-first beta reduction graph of `m`.
UntypedGraph reduction_graph(const Term& m, std::size_t max_vertices, std::size_t max_depth,
                             Mode mode = Mode::Beta);

}  // namespace lcw::untyped

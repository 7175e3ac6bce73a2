#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lcw/reduction_graph.hpp"
#include "lcw/untyped.hpp"

namespace lcw::combinatory {

/// Combinatory term over S, K and variables.
class CTerm {
  public:
    enum class Kind { Var, S, K, App };

    static CTerm var(std::string name);
    static CTerm s();
    static CTerm k();
    static CTerm app(CTerm fun, CTerm arg);

    Kind kind() const { return node_->kind; }
    bool is_var() const { return kind() == Kind::Var; }
    bool is_app() const { return kind() == Kind::App; }
    const std::string& name() const { return node_->name; }
    const CTerm& fun() const { return node_->kids[0]; }
    const CTerm& arg() const { return node_->kids[1]; }
    std::size_t size() const { return node_->size; }

    bool operator==(const CTerm& other) const;
    bool operator!=(const CTerm& other) const { return !(*this == other); }

  private:
    struct Node {
        Kind kind;
        std::string name;
        std::vector<CTerm> kids;
        std::size_t size;
    };
    explicit CTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

CTerm capply(CTerm f, std::initializer_list<CTerm> args);
/// SKK.
CTerm i();
/// S(K(SKK)).
CTerm one();

/// Structural key; CTerm has no binders so this is plain syntax.
std::string key(const CTerm& a);
bool occurs(const CTerm& a, const std::string& x);
/// True when `a` contains no variables, i.e. denotes a constant of the algebra.
bool is_closed(const CTerm& a);
/// A[B/x] by plain replacement.
CTerm csubst(const CTerm& a, const CTerm& b, const std::string& x);

struct CReduct {
    CTerm term;
    Path position;
};

/// All one-step reducts, leftmost-outermost first.
std::vector<CReduct> creduce_step(const CTerm& a);
std::optional<CTerm> cstep_leftmost(const CTerm& a);

struct CNormalizeResult {
    CTerm term;
    std::size_t steps;
    bool exhausted;
};

CNormalizeResult cnormalize(const CTerm& a, std::size_t fuel);

using CGraph = ReductionGraph<CTerm>;
CGraph creduction_graph(const CTerm& a, std::size_t max_vertices, std::size_t max_depth);

/// Bracket abstraction without the eta shortcut. Variable-free subterms are
/// constants and get a single K.
CTerm bracket_abstract(const std::string& x, const CTerm& a);

CTerm to_combinatory(const untyped::Term& m);
untyped::Term to_lambda(const CTerm& a);

struct RoundtripResult {
    bool equal;
    bool exhausted;
};

/// Compares the beta normal forms of M and (M_c)_lambda.
RoundtripResult roundtrip_check(const untyped::Term& m, std::size_t fuel);

struct AxiomCheck {
    std::string label;
    CTerm lhs;
    CTerm rhs;
    bool holds;
    bool exhausted;
};

/// The nine lambda-algebra axioms, each closed by bracket abstraction over
/// its own variables, translated to lambda terms and compared after beta
/// normalization.
std::vector<AxiomCheck> verify_lambda_algebra_axioms(std::size_t fuel);

}  // namespace lcw::combinatory

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lcw/reduction_graph.hpp"
#include "lcw/typed_term.hpp"

namespace lcw::stlc {

using typed::Context;
using typed::Derivation;
using typed::TypedTerm;
using types::Type;

Type typecheck(const Context& ctx, const TypedTerm& m);
Derivation derivation(const Context& ctx, const TypedTerm& m);

/// Natural-deduction name of a typing rule: (ax), (→-I), (→-E), (∧-I),
/// (∧-E1), (∧-E2), (⊤-I), (∨-I1), (∨-I2), (∨-E), (⊥-E).
std::string nd_label(const std::string& rule);
std::size_t node_count(const Derivation& d);
/// Reassembles the term from the derivation's rule instances.
TypedTerm rebuild_term(const Derivation& d);

/// One judgment per line, premises indented below their conclusion.
std::string render_text(const Derivation& d, bool unicode = true);
/// {"rule", "label", "judgment", "premises": [...]}.
std::string render_json(const Derivation& d, int indent = 2);

struct StepOptions {
    bool eta = false;
    /// M -> * for M : 1, M != *. Breaks confluence.
    bool eta_unit = false;
};

struct TypedReduct {
    TypedTerm term;
    Path position;
    std::string rule;
};

/// Single-step reducts, outermost first then children left to right.
/// Rule names: beta, beta-pi1, beta-pi2, beta-case1, beta-case2, eta, eta-pair,
/// eta-unit.
std::vector<TypedReduct> step_typed(const Context& ctx, const TypedTerm& m,
                                    const StepOptions& opts = {});

enum class Mode { Beta, BetaEta };

struct TypedNormalizeResult {
    TypedTerm term;
    std::size_t steps;
    bool exhausted;
};

/// Leftmost-outermost beta normalization, then eta steps (eta-unit only if
/// requested) until no rule applies.
TypedNormalizeResult normalize_typed(const Context& ctx, const TypedTerm& m, Mode mode,
                                     std::size_t fuel, bool eta_unit = false);

using TypedGraph = ReductionGraph<TypedTerm>;
TypedGraph typed_reduction_graph(const Context& ctx, const TypedTerm& m, const StepOptions& opts,
                                 std::size_t max_vertices, std::size_t max_depth);

}  // namespace lcw::stlc

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lcw/typed_term.hpp"

namespace lcw::pcf {

using typed::Context;
using typed::Dialect;
using typed::TypedTerm;
using types::Type;

/// bool, nat, arrows, products and 1.
bool is_pcf_type(const Type& a);

/// Unique type or typed::TypeError. Annotations and context entries must be
/// PCF types; POR is accepted only in the parallel dialect.
Type pcf_typecheck(const Context& ctx, const TypedTerm& m, Dialect dialect = Dialect::Pcf);

/// T, F, zero, succ(V), *, pairs and abstractions.
bool is_value(const TypedTerm& m);
/// Closed values of type bool or nat.
bool is_result(const TypedTerm& m);

enum class StepStatus { Stepped, IsValue, Stuck };

struct StepResult {
    StepStatus status = StepStatus::Stuck;
    std::optional<TypedTerm> term;
    /// Axiom fired at the redex: pred-zero, pred-succ, iszero-zero,
    /// iszero-succ, beta, pi1, pi2, if-true, if-false, fix, unit, por-true-left,
    /// por-true-right, por-false. Empty unless Stepped.
    std::string rule;
    Path position;
};

/// One step of the deterministic small-step relation. The unit rule needs
/// the type of the term and is tried only when no structural rule applies;
/// `ctx` types the free variables for it. In the parallel dialect both POR
/// arguments step together when both can, otherwise whichever one can.
StepResult small_step(const TypedTerm& m, Dialect dialect = Dialect::Pcf, const Context& ctx = {});

enum class Outcome { Value, Stuck, FuelExhausted, NoRule };

std::string to_string(Outcome o);

struct EvalResult {
    Outcome outcome = Outcome::FuelExhausted;
    /// The value, the stuck term, or the last term reached.
    TypedTerm term;
    std::size_t steps = 0;
    /// Each step taken, when tracing was requested.
    std::vector<StepResult> trace;
    /// Big-step only: the nesting limit, not the fuel, stopped the search.
    bool depth_limited = false;
    bool ok() const { return outcome == Outcome::Value; }
};

struct EvalOptions {
    Dialect dialect = Dialect::Pcf;
    Context ctx;
    bool trace = false;
};

/// Iterates small_step at most `fuel` times.
EvalResult eval_small(const TypedTerm& m, std::size_t fuel, const EvalOptions& opts = {});
/// eval_small in the parallel dialect.
EvalResult por_eval(const TypedTerm& m, std::size_t fuel);

/// Derivation search by the big-step rules; every rule application costs one
/// unit of fuel. NoRule reports a configuration no rule covers. Nesting
/// deeper than `kMaxBigStepDepth` is reported as FuelExhausted.
EvalResult eval_big(const TypedTerm& m, std::size_t fuel, const EvalOptions& opts = {});
inline constexpr std::size_t kMaxBigStepDepth = 10000;

struct AxOptions {
    /// Y(M) = M(Y(M)) is used at most this many times.
    std::size_t y_bound = 32;
};

struct AxResult {
    TypedTerm term;
    std::size_t steps = 0;
    std::size_t y_unfolds = 0;
    /// Step fuel ran out before a normal form.
    bool exhausted = false;
    /// Some Y was left folded because the unfolding bound was reached.
    bool y_bound_hit = false;
    /// Every term of the rewrite sequence, starting with the input.
    std::vector<TypedTerm> sequence;
    /// Y-unfoldings spent to reach each term of the sequence.
    std::vector<std::size_t> y_counts;
};

/// One leftmost-outermost step of the axiomatic equations oriented left to
/// right, with beta and the projection rules; descends under binders.
std::optional<TypedTerm> ax_step(const TypedTerm& m, bool allow_fix = true);

/// Normalizes with ax_step.
AxResult ax_rewrite(const TypedTerm& m, std::size_t fuel, const AxOptions& opts = {});

/// Whether the two rewrite sequences share a term up to alpha, i.e. the
/// terms are shown equal by the oriented equations.
bool ax_joinable(const TypedTerm& m, const TypedTerm& n, std::size_t fuel, const AxOptions& opts = {});

/// Y(\x:A. x).
TypedTerm omega(const Type& a);

/// The POR tester over x : bool -> bool -> bool.
TypedTerm por_test_term();
/// \a:bool. \b:bool. POR a b.
TypedTerm por_function();

}  // namespace lcw::pcf

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lcw/reduction_graph.hpp"
#include "lcw/typed_term.hpp"

namespace lcw::infer {

using typed::Context;
using typed::TypedTerm;
using types::Type;

/// Finite map from template variables to templates; identity elsewhere.
using TypeSubstitution = std::map<std::string, Type>;

Type apply_subst(const TypeSubstitution& s, const Type& a);
Context apply_subst(const TypeSubstitution& s, const Context& ctx);
/// The substitution whose action is t after s.
TypeSubstitution compose(const TypeSubstitution& t, const TypeSubstitution& s);
std::string to_string(const TypeSubstitution& s, bool unicode = false);

struct MguTraceEntry {
    int clause;
    std::vector<Type> lhs;
    std::vector<Type> rhs;
    std::size_t depth;
};

/// Live-variable count before and after one successful mgu call.
struct LiveVariableStep {
    std::size_t before;
    std::size_t after;
    bool identity;
};

enum class UnifyFailureKind { Occurs, Clash };

struct UnifyFailure {
    UnifyFailureKind kind;
    int clause;
    Type lhs;
    Type rhs;
};

struct MguResult {
    std::optional<TypeSubstitution> sigma;
    std::optional<UnifyFailure> failure;
    std::vector<MguTraceEntry> trace;
    std::vector<LiveVariableStep> live;
    bool ok() const { return sigma.has_value(); }
};

/// Most general unifier of two equally long template lists, choosing the
/// first applicable clause. Throws UsageError on a length mismatch.
MguResult mgu(const std::vector<Type>& as, const std::vector<Type>& bs);
MguResult mgu(const Type& a, const Type& b);

struct InferFailure {
    Path path;
    std::string message;
    std::optional<UnifyFailure> unify;
};

struct InferResult {
    std::optional<TypeSubstitution> sigma;
    std::optional<InferFailure> failure;
    /// Every mgu call made, in order.
    std::vector<MguTraceEntry> trace;
    /// Binder type (before sigma) for each abstraction, by path.
    std::map<Path, Type> binders;
    bool ok() const { return sigma.has_value(); }
};

/// Generator of fresh template variables T0, T1, ... that avoids a given set.
class FreshVars {
  public:
    explicit FreshVars(std::set<std::string> avoid = {}) : avoid_(std::move(avoid)) {}
    Type next();

  private:
    std::set<std::string> avoid_;
    std::size_t counter_ = 0;
};

/// Most general sigma with sigma(ctx) |- m : sigma(b). Unannotated binders get
/// a fresh variable; sums, void and PCF constants are rejected.
InferResult typeinfer(const Context& ctx, const TypedTerm& m, const Type& b, FreshVars& fresh);
InferResult typeinfer(const Context& ctx, const TypedTerm& m, const Type& b);

struct PrincipalType {
    Type type;
    /// Types of the free variables, sorted by name.
    Context ctx;
    /// The term with every binder annotated at its principal type.
    TypedTerm annotated;
};

struct PrincipalResult {
    std::optional<PrincipalType> principal;
    std::optional<InferFailure> failure;
    std::vector<MguTraceEntry> trace;
};

/// Principal typing, variables renamed A, B, C, ... in order of first use.
PrincipalResult principal_type(const TypedTerm& m);

/// One-way matching: sigma with sigma(a) = b, variables of b held fixed.
std::optional<TypeSubstitution> more_general(const Type& a, const Type& b);

/// Renames template variables to A, B, C, ... (then A1, B1, ...) in order of
/// first occurrence across the given types.
std::vector<Type> rename_readable(const std::vector<Type>& ts);
TypeSubstitution readable_renaming(const std::vector<Type>& ts);

}  // namespace lcw::infer

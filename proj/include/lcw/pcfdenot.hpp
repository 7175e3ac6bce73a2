#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lcw/pcf.hpp"

namespace lcw::pcfdenot {

using typed::Context;
using typed::Dialect;
using typed::TypedTerm;
using types::Type;

struct DomValue;
using Thunk = std::function<DomValue()>;

/// An element of the cpo interpreting a PCF type. Ground types are the flat
/// domains; pair components are thunks; functions are closures.
struct DomValue {
    enum class Kind { Bottom, Bool, Nat, Pair, Fun, Unit };

    Kind kind = Kind::Bottom;
    bool boolean = false;
    unsigned long nat = 0;
    std::shared_ptr<const Thunk> left;
    std::shared_ptr<const Thunk> right;
    std::shared_ptr<const std::function<DomValue(Thunk)>> fn;

    static DomValue bottom() { return {}; }
    static DomValue of_bool(bool b);
    static DomValue of_nat(unsigned long n);
    static DomValue unit();
    static DomValue pair(Thunk l, Thunk r);
    static DomValue function(std::function<DomValue(Thunk)> f);

    bool is_bottom() const { return kind == Kind::Bottom; }
    bool is_ground() const { return kind == Kind::Bottom || kind == Kind::Bool || kind == Kind::Nat || kind == Kind::Unit; }
};

/// Equality of ground elements; UsageError for pairs and functions.
bool ground_equal(const DomValue& a, const DomValue& b);
/// The flat order on ground elements.
bool flat_leq(const DomValue& a, const DomValue& b);
/// `⊥`, `T`, `F`, numbers, `*`; pairs and functions print as `<pair>` and
/// `<function>` without forcing anything.
std::string to_string(const DomValue& v);
/// The denotation of a result (T, F or a numeral).
DomValue of_result(const TypedTerm& v);

using Env = std::map<std::string, DomValue>;

struct Denotation {
    DomValue value;
    /// Y-unfoldings performed.
    std::size_t unfoldings = 0;
    /// Some Y was met with no fuel left and denoted bottom.
    bool starved = false;
    /// Evaluation nested deeper than kMaxDenotDepth and that branch denoted
    /// bottom.
    bool depth_limited = false;
};

inline constexpr std::size_t kMaxDenotDepth = 10000;

/// The fuel-th Kleene approximation of the denotation of `m`: each Y
/// unfolding spends one unit of a budget shared by the whole call, and Y at
/// fuel 0 denotes bottom. Arguments are passed unevaluated. UsageError if
/// `env` misses a context variable; typed::TypeError if `m` is ill-typed.
Denotation denote_counted(const Context& ctx, const TypedTerm& m, const Env& env, std::size_t fuel,
                          Dialect dialect = Dialect::Pcf);
DomValue denote(const Context& ctx, const TypedTerm& m, const Env& env, std::size_t fuel,
                Dialect dialect = Dialect::Pcf);
/// Closed terms.
DomValue denote(const TypedTerm& m, std::size_t fuel, Dialect dialect = Dialect::Pcf);

struct AdequacyVerdict {
    pcf::EvalResult operational;
    /// At the requested denotational fuel.
    DomValue denotation;
    std::size_t unfoldings = 0;
    /// Least fuel at which the denotation equals that of the operational
    /// result, when the program converged.
    std::optional<std::size_t> threshold;
    /// False only when the program converged and the denotation disagrees.
    bool consistent = true;
};

/// UsageError unless `m` is a closed term of type bool or nat.
AdequacyVerdict adequacy_check(const TypedTerm& m, std::size_t fuel_op, std::size_t fuel_den);

struct SoundnessSpot {
    bool joined = false;
    /// Y-unfoldings the rewriting of M spent beyond those of N.
    long offset = 0;
    /// (fuel, denotation of M, denotation of N), fuels already offset.
    struct Sample {
        std::size_t fuel_m;
        std::size_t fuel_n;
        DomValue m;
        DomValue n;
    };
    std::vector<Sample> samples;
    bool equal = false;
};

/// Joins M and N by the oriented axioms and compares their denotations at
/// each listed fuel, giving the side that unfolded Y more often that many
/// extra units. UsageError unless both are closed and of the same ground type.
SoundnessSpot soundness_spot(const TypedTerm& m, const TypedTerm& n, std::size_t rewrite_fuel,
                             const std::vector<std::size_t>& fuels, const pcf::AxOptions& opts = {});

/// A finite partial order given by its relation matrix.
class FinitePoset {
  public:
    /// UsageError unless the relation is reflexive, antisymmetric and transitive.
    FinitePoset(std::vector<std::string> labels, std::vector<std::vector<bool>> leq);

    /// ⊥ below each of the given pairwise incomparable values.
    static FinitePoset flat(const std::vector<std::string>& values);
    static FinitePoset point();
    /// The lifted booleans ⊥, T, F.
    static FinitePoset lifted_bool();

    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    bool leq(std::size_t i, std::size_t j) const { return leq_[i][j]; }
    std::optional<std::size_t> bottom() const;
    std::optional<std::size_t> index_of(const std::string& label) const;

  private:
    std::vector<std::string> labels_;
    std::vector<std::vector<bool>> leq_;
};

/// Image of element i is map[i].
using MonotoneMap = std::vector<std::size_t>;

bool is_monotone(const FinitePoset& p, const FinitePoset& q, const MonotoneMap& f);
/// All monotone maps in lexicographic order of their tables. UsageError
/// when |P| > 6 or there are more than 10^7 candidate tables.
std::vector<MonotoneMap> monotone_maps(const FinitePoset& p, const FinitePoset& q);
/// Monotone maps under the pointwise order, labelled `[a↦b, ...]`.
FinitePoset function_poset(const FinitePoset& p, const FinitePoset& q);
std::string to_string(const FinitePoset& p, const MonotoneMap& f, const FinitePoset& q);

std::vector<std::size_t> fixed_points(const FinitePoset& p, const MonotoneMap& f);
/// Kleene iteration from the least element. UsageError if P has no least
/// element or f is not a monotone endomap.
std::size_t least_fixed_point(const FinitePoset& p, const MonotoneMap& f);

}  // namespace lcw::pcfdenot

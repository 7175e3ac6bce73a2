#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcw/typed_term.hpp"

namespace lcw::models {

using typed::Context;
using typed::TypedTerm;
using types::Type;

constexpr std::size_t kDefaultBound = 1000000;

/// Thrown when a domain or environment space would exceed the size bound.
class ModelOverflow : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Sizes of the base sets. Names not listed get `uniform` (0 = unassigned).
struct BaseAssignment {
    std::map<std::string, std::size_t> sizes;
    std::size_t uniform = 0;

    static BaseAssignment all(std::size_t k) { return {{}, k}; }
    std::size_t size_of(const std::string& base) const;
};

struct SemValue {
    enum class Kind { Atom, Tuple, Table, UnitPoint };
    Kind kind = Kind::UnitPoint;
    std::size_t atom = 0;
    /// Tuple: the two components. Table: outputs in domain order.
    std::vector<SemValue> parts;

    bool operator==(const SemValue& o) const {
        return kind == o.kind && atom == o.atom && parts == o.parts;
    }
    bool operator!=(const SemValue& o) const { return !(*this == o); }
};

std::string to_string(const SemValue& v);

/// The finite set of a type, its elements numbered 0..size-1 in canonical
/// order. Pairs are numbered row-major; a function f is numbered by the digits
/// f(0), f(1), ... in base |codomain|, f(0) least significant. Construction
/// throws ModelOverflow when the set is larger than the bound.
class Domain {
  public:
    Domain(const Type& a, const BaseAssignment& base, std::size_t bound = kDefaultBound);

    const Type& type() const { return type_; }
    std::size_t size() const { return size_; }
    SemValue value(std::size_t i) const;
    std::size_t index(const SemValue& v) const;

  private:
    Type type_;
    std::size_t size_ = 1;
    std::shared_ptr<Domain> left_;
    std::shared_ptr<Domain> right_;
    std::vector<std::size_t> powers_;
};

/// All elements of the type's set, in canonical order.
std::vector<SemValue> interp_type(const Type& a, const BaseAssignment& base,
                                  std::size_t bound = kDefaultBound);

/// Exhaustive table of a judgment: one output per environment tuple. The
/// environments are enumerated with the last context entry varying fastest;
/// an environment is a list of element indices, one per context entry.
/// Only the context and binder types are enumerated, so the result type's set
/// may be far larger than the bound.
struct TermTable {
    Context ctx;
    Type type;
    std::vector<std::size_t> env_sizes;
    std::vector<SemValue> entries;

    std::size_t env_index(const std::vector<std::size_t>& env) const;
    std::vector<std::size_t> env_at(std::size_t i) const;
    const SemValue& at(const std::vector<std::size_t>& env) const { return entries[env_index(env)]; }
    bool operator==(const TermTable& o) const { return type == o.type && entries == o.entries; }
    bool operator!=(const TermTable& o) const { return !(*this == o); }
};

/// Throws TypeError unless ctx |- m : a, UsageError on sums, void or PCF
/// syntax, ModelOverflow past the bound.
TermTable interp_term(const Context& ctx, const TypedTerm& m, const Type& a,
                      const BaseAssignment& base, std::size_t bound = kDefaultBound);

struct SoundnessCheck {
    bool tables_equal;
    /// Whether the beta-eta normal forms coincide; empty if fuel ran out.
    std::optional<bool> convertible;
};

SoundnessCheck check_soundness(const TypedTerm& m, const TypedTerm& n, const Context& ctx,
                               const Type& a, const BaseAssignment& base, std::size_t fuel);

/// Smallest uniform base size in 1..max_base at which the tables differ.
std::optional<BaseAssignment> separate(const TypedTerm& m, const TypedTerm& n, const Context& ctx,
                                       const Type& a, std::size_t max_base,
                                       std::size_t bound = kDefaultBound);

/// λf^{a→a}.λx^a. f(...(f x)), n applications.
TypedTerm typed_numeral(std::size_t n, const Type& a);

}  // namespace lcw::models

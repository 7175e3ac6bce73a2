#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lcw/untyped.hpp"

namespace lcw::encodings {

using untyped::Term;
using TermTable = std::map<std::string, Term>;

Term church_bool(bool b);
/// Keys: and, or, not, if_then_else.
TermTable bool_ops();

Term church_numeral(unsigned long n);

/// Matches `\f x. f (f ... x)` without reducing.
std::optional<unsigned long> match_numeral(const Term& m);
/// Matches T or F without reducing.
std::optional<bool> match_bool(const Term& m);

enum class DecodeStatus { Ok, NotANumeral, FuelExhausted };

struct NumeralDecode {
    DecodeStatus status;
    unsigned long value = 0;
    Term normal_form;
};

/// Beta-normalizes `m` and reads back a Church numeral.
NumeralDecode decode_numeral(const Term& m, std::size_t fuel);

/// Keys: succ, add, mult, iszero, pred, exp.
TermTable arith_ops();

/// Keys: theta, y.
TermTable fixpoint_combinators();

struct RepresentsFailure {
    std::vector<unsigned long> inputs;
    unsigned long expected;
    std::optional<unsigned long> actual;
    bool exhausted;
};

struct RepresentsReport {
    std::size_t checked = 0;
    std::vector<RepresentsFailure> failures;
    bool ok() const { return failures.empty(); }
};

/// Checks numeralwise that `m` applied to the inputs normalizes to f(inputs).
RepresentsReport represents(const Term& m,
                            const std::function<unsigned long(const std::vector<unsigned long>&)>& f,
                            std::size_t arity, const std::vector<std::vector<unsigned long>>& inputs,
                            std::size_t fuel);

Term pair(Term m, Term n);
Term pi1();
Term pi2();
Term tuple(const std::vector<Term>& items);
/// The i-th of n projections, 1-based. Throws UsageError unless 1 <= i <= n.
Term proj(std::size_t n, std::size_t i);
Term nil();
Term cons(Term head, Term tail);
Term list(const std::vector<Term>& items);
Term leaf(Term n);
Term node(Term left, Term right);

/// Theta (\self. body).
Term recursive_term(const std::string& self, Term body);

Term fact();
/// f(0) = f(1) = 1, f(n+2) = f(n+1) + f(n).
Term fib();
Term addlist();
Term addtree();

}  // namespace lcw::encodings

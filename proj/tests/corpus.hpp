#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "lcw/syntax.hpp"
#include "lcw/untyped.hpp"

namespace lcw::testing {

inline untyped::Term U(const std::string& text) { return syntax::parse_untyped(text); }

/// Random untyped term with exactly `size` nodes.
inline untyped::Term random_untyped(std::mt19937& rng, int size) {
    using untyped::Term;
    static const std::vector<std::string> names{"x", "y", "z", "w"};
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    if (size <= 1) {
        return Term::var(names[pick(names.size())]);
    }
    if (size == 2 || pick(5) < 2) {
        return Term::abs(names[pick(names.size())], random_untyped(rng, size - 1));
    }
    int left = 1 + static_cast<int>(pick(static_cast<std::size_t>(size - 2)));
    return Term::app(random_untyped(rng, left), random_untyped(rng, size - 1 - left));
}

/// Like random_untyped, but half of the applications have an abstraction in
/// function position, so most terms carry several (often nested) redexes.
inline untyped::Term redex_rich_untyped(std::mt19937& rng, int size) {
    using untyped::Term;
    static const std::vector<std::string> names{"x", "y", "z"};
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    if (size <= 1) {
        return Term::var(names[pick(names.size())]);
    }
    if (size == 2 || pick(4) == 0) {
        return Term::abs(names[pick(names.size())], redex_rich_untyped(rng, size - 1));
    }
    if (size >= 4 && pick(2) == 0) {
        int left = 2 + static_cast<int>(pick(static_cast<std::size_t>(size - 3)));
        Term body = redex_rich_untyped(rng, left - 1);
        return Term::app(Term::abs(names[pick(names.size())], body), redex_rich_untyped(rng, size - 1 - left));
    }
    int left = 1 + static_cast<int>(pick(static_cast<std::size_t>(size - 2)));
    return Term::app(redex_rich_untyped(rng, left), redex_rich_untyped(rng, size - 1 - left));
}

/// Random closed term with `size` nodes, at most `max_binders` abstractions.
inline untyped::Term random_closed_untyped(std::mt19937& rng, int size, int max_binders,
                                           std::vector<std::string> scope = {}) {
    using untyped::Term;
    static const std::vector<std::string> names{"x", "y", "z", "w"};
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    bool can_bind = max_binders > 0;
    if (scope.empty() || (can_bind && size >= 2 && pick(3) == 0) || (size == 2 && can_bind)) {
        std::string x = names[pick(names.size())];
        scope.push_back(x);
        return Term::abs(x, random_closed_untyped(rng, std::max(1, size - 1), max_binders - 1, scope));
    }
    if (size <= 2) {
        return Term::var(scope[pick(scope.size())]);
    }
    int left = 1 + static_cast<int>(pick(static_cast<std::size_t>(size - 2)));
    int budget = max_binders / 2;
    return Term::app(random_closed_untyped(rng, left, budget, scope),
                     random_closed_untyped(rng, size - 1 - left, max_binders - budget, scope));
}

/// Deterministic corpus of `count` terms with sizes cycling through 1..max_size.
inline std::vector<untyped::Term> untyped_corpus(std::size_t count, int max_size,
                                                 unsigned seed = 7) {
    std::mt19937 rng(seed);
    std::vector<untyped::Term> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(random_untyped(rng, 1 + static_cast<int>(i % max_size)));
    }
    return out;
}

/// Renames every binder to a name never used elsewhere ("b0", "b1", ...).
inline untyped::Term alpha_variant(const untyped::Term& m, std::map<std::string, std::string> env = {},
                                   int* counter = nullptr) {
    using untyped::Term;
    int local = 0;
    if (!counter) {
        counter = &local;
    }
    switch (m.kind()) {
        case Term::Kind::Var: {
            auto it = env.find(m.name());
            return it == env.end() ? m : Term::var(it->second);
        }
        case Term::Kind::App:
            return Term::app(alpha_variant(m.fun(), env, counter),
                             alpha_variant(m.arg(), env, counter));
        case Term::Kind::Abs: {
            std::string fresh = "b" + std::to_string((*counter)++);
            env[m.name()] = fresh;
            return Term::abs(fresh, alpha_variant(m.body(), env, counter));
        }
    }
    return m;
}

}  // namespace lcw::testing

#include "lcw/encodings.hpp"

#include <initializer_list>
#include <utility>

#include "lcw/names.hpp"
#include "lcw/syntax.hpp"

namespace lcw::encodings {

namespace {

/// Parses `text` and replaces the listed free names by closed terms.
Term build(const std::string& text, std::initializer_list<std::pair<std::string, Term>> defs = {}) {
    Term t = syntax::parse_untyped(text);
    for (const auto& [name, value] : defs) {
        t = untyped::subst(t, value, name);
    }
    return t;
}

}  // namespace

Term church_bool(bool b) { return build(b ? "\\x y. x" : "\\x y. y"); }

TermTable bool_ops() {
    Term t = church_bool(true);
    Term f = church_bool(false);
    return {
        {"and", build("\\a b. a b F", {{"F", f}})},
        {"or", build("\\a b. a T b", {{"T", t}})},
        {"not", build("\\a. a F T", {{"T", t}, {"F", f}})},
        {"if_then_else", build("\\x. x")},
    };
}

Term church_numeral(unsigned long n) {
    Term body = Term::var("x");
    for (unsigned long i = 0; i < n; ++i) {
        body = Term::app(Term::var("f"), std::move(body));
    }
    return Term::abs("f", Term::abs("x", std::move(body)));
}

std::optional<unsigned long> match_numeral(const Term& m) {
    if (!m.is_abs() || !m.body().is_abs()) {
        return std::nullopt;
    }
    const std::string& f = m.name();
    const std::string& x = m.body().name();
    if (f == x) {
        return std::nullopt;
    }
    unsigned long n = 0;
    const Term* t = &m.body().body();
    while (t->is_app()) {
        if (!t->fun().is_var() || t->fun().name() != f) {
            return std::nullopt;
        }
        ++n;
        t = &t->arg();
    }
    if (t->is_var() && t->name() == x) {
        return n;
    }
    return std::nullopt;
}

std::optional<bool> match_bool(const Term& m) {
    if (untyped::alpha_eq(m, church_bool(true))) {
        return true;
    }
    if (untyped::alpha_eq(m, church_bool(false))) {
        return false;
    }
    return std::nullopt;
}

NumeralDecode decode_numeral(const Term& m, std::size_t fuel) {
    auto r = untyped::normalize(m, untyped::Mode::Beta, fuel);
    if (r.exhausted) {
        return {DecodeStatus::FuelExhausted, 0, r.term};
    }
    if (auto n = match_numeral(r.term)) {
        return {DecodeStatus::Ok, *n, r.term};
    }
    return {DecodeStatus::NotANumeral, 0, r.term};
}

TermTable arith_ops() {
    Term succ = build("\\n f x. f (n f x)");
    Term mult = build("\\n m f. n (m f)");
    Term zero = church_numeral(0);
    Term one = church_numeral(1);
    Term pred = build("\\n. pi1 (n (\\p. pair (pi2 p) (succ (pi2 p))) (pair zero zero))",
                      {{"pi1", pi1()},
                       {"pi2", pi2()},
                       {"pair", build("\\a b z. z a b")},
                       {"succ", succ},
                       {"zero", zero}});
    return {
        {"succ", succ},
        {"add", build("\\n m f x. n f (m f x)")},
        {"mult", mult},
        {"iszero", build("\\n x y. n (\\z. y) x")},
        {"pred", pred},
        {"exp", build("\\n m. m (mult n) one", {{"mult", mult}, {"one", one}})},
    };
}

TermTable fixpoint_combinators() {
    Term a = build("\\x y. y (x x y)");
    return {
        {"theta", Term::app(a, a)},
        {"y", build("\\f. (\\x. f (x x)) (\\x. f (x x))")},
    };
}

RepresentsReport represents(const Term& m,
                            const std::function<unsigned long(const std::vector<unsigned long>&)>& f,
                            std::size_t arity, const std::vector<std::vector<unsigned long>>& inputs,
                            std::size_t fuel) {
    if (inputs.empty()) {
        throw UsageError("represents: no inputs");
    }
    RepresentsReport report;
    for (const auto& args : inputs) {
        if (args.size() != arity) {
            throw UsageError("represents: input tuple has the wrong arity");
        }
        Term applied = m;
        for (unsigned long a : args) {
            applied = Term::app(applied, church_numeral(a));
        }
        unsigned long expected = f(args);
        auto d = decode_numeral(applied, fuel);
        ++report.checked;
        if (d.status == DecodeStatus::Ok && d.value == expected) {
            continue;
        }
        RepresentsFailure fail{args, expected, std::nullopt,
                               d.status == DecodeStatus::FuelExhausted};
        if (d.status == DecodeStatus::Ok) {
            fail.actual = d.value;
        }
        report.failures.push_back(std::move(fail));
    }
    return report;
}

Term pair(Term m, Term n) {
    std::set<std::string> taken = untyped::all_names(m);
    for (const auto& v : untyped::all_names(n)) {
        taken.insert(v);
    }
    std::string z = taken.count("z") ? fresh_name("z", taken) : "z";
    return Term::abs(z, untyped::apply(Term::var(z), {std::move(m), std::move(n)}));
}

Term pi1() { return build("\\p. p (\\x y. x)"); }
Term pi2() { return build("\\p. p (\\x y. y)"); }

Term tuple(const std::vector<Term>& items) {
    std::set<std::string> taken;
    for (const auto& item : items) {
        for (const auto& v : untyped::all_names(item)) {
            taken.insert(v);
        }
    }
    std::string z = taken.count("z") ? fresh_name("z", taken) : "z";
    Term body = Term::var(z);
    for (const auto& item : items) {
        body = Term::app(std::move(body), item);
    }
    return Term::abs(z, std::move(body));
}

Term proj(std::size_t n, std::size_t i) {
    if (i < 1 || i > n) {
        throw UsageError("proj: index " + std::to_string(i) + " out of range 1.." +
                         std::to_string(n));
    }
    Term sel = Term::var("x" + std::to_string(i));
    for (std::size_t k = n; k >= 1; --k) {
        sel = Term::abs("x" + std::to_string(k), std::move(sel));
    }
    return Term::abs("p", Term::app(Term::var("p"), std::move(sel)));
}

Term nil() { return build("\\x y. y"); }

Term cons(Term head, Term tail) {
    return build("\\x y. x H T", {{"H", std::move(head)}, {"T", std::move(tail)}});
}

Term list(const std::vector<Term>& items) {
    Term out = nil();
    for (auto it = items.rbegin(); it != items.rend(); ++it) {
        out = cons(*it, std::move(out));
    }
    return out;
}

Term leaf(Term n) { return build("\\x y. x N", {{"N", std::move(n)}}); }

Term node(Term left, Term right) {
    return build("\\x y. y L R", {{"L", std::move(left)}, {"R", std::move(right)}});
}

Term recursive_term(const std::string& self, Term body) {
    return Term::app(fixpoint_combinators().at("theta"), Term::abs(self, std::move(body)));
}

Term fact() {
    auto ar = arith_ops();
    Term body = build("\\n. ite (iszero n) one (mult n (f (pred n)))",
                      {{"ite", bool_ops().at("if_then_else")},
                       {"iszero", ar.at("iszero")},
                       {"one", church_numeral(1)},
                       {"mult", ar.at("mult")},
                       {"pred", ar.at("pred")}});
    return recursive_term("f", body);
}

Term fib() {
    auto ar = arith_ops();
    Term body = build(
        "\\n. ite (iszero n) one (ite (iszero (pred n)) one (add (f (pred n)) (f (pred (pred n)))))",
        {{"ite", bool_ops().at("if_then_else")},
         {"iszero", ar.at("iszero")},
         {"one", church_numeral(1)},
         {"add", ar.at("add")},
         {"pred", ar.at("pred")}});
    return recursive_term("f", body);
}

Term addlist() {
    Term body = build("\\l. l (\\h t. add h (f t)) zero",
                      {{"add", arith_ops().at("add")}, {"zero", church_numeral(0)}});
    return recursive_term("f", body);
}

Term addtree() {
    Term body = build("\\t. t (\\n. n) (\\l r. add (f l) (f r))", {{"add", arith_ops().at("add")}});
    return recursive_term("f", body);
}

}  // namespace lcw::encodings

#include "lcw/combinatory.hpp"

#include <functional>

#include "lcw/names.hpp"

namespace lcw::combinatory {

CTerm CTerm::var(std::string name) {
    return CTerm(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}, 1}));
}

CTerm CTerm::s() {
    static const CTerm s(std::make_shared<const Node>(Node{Kind::S, "S", {}, 1}));
    return s;
}

CTerm CTerm::k() {
    static const CTerm k(std::make_shared<const Node>(Node{Kind::K, "K", {}, 1}));
    return k;
}

CTerm CTerm::app(CTerm fun, CTerm arg) {
    std::size_t size = 1 + fun.size() + arg.size();
    return CTerm(std::make_shared<const Node>(
        Node{Kind::App, {}, {std::move(fun), std::move(arg)}, size}));
}

bool CTerm::operator==(const CTerm& other) const {
    if (node_ == other.node_) {
        return true;
    }
    if (kind() != other.kind() || size() != other.size()) {
        return false;
    }
    switch (kind()) {
        case Kind::Var:
            return name() == other.name();
        case Kind::S:
        case Kind::K:
            return true;
        case Kind::App:
            return fun() == other.fun() && arg() == other.arg();
    }
    return false;
}

CTerm capply(CTerm f, std::initializer_list<CTerm> args) {
    for (const auto& a : args) {
        f = CTerm::app(std::move(f), a);
    }
    return f;
}

CTerm i() { return capply(CTerm::s(), {CTerm::k(), CTerm::k()}); }

CTerm one() { return CTerm::app(CTerm::s(), CTerm::app(CTerm::k(), i())); }

namespace {

void write_key(const CTerm& a, std::string& out) {
    switch (a.kind()) {
        case CTerm::Kind::Var:
            out += '$';
            out += a.name();
            out += ';';
            break;
        case CTerm::Kind::S:
            out += 'S';
            break;
        case CTerm::Kind::K:
            out += 'K';
            break;
        case CTerm::Kind::App:
            out += '@';
            write_key(a.fun(), out);
            write_key(a.arg(), out);
            break;
    }
}

bool is_s_redex(const CTerm& a) {
    return a.is_app() && a.fun().is_app() && a.fun().fun().is_app() &&
           a.fun().fun().fun().kind() == CTerm::Kind::S;
}

bool is_k_redex(const CTerm& a) {
    return a.is_app() && a.fun().is_app() && a.fun().fun().kind() == CTerm::Kind::K;
}

std::optional<CTerm> contract(const CTerm& a) {
    if (is_s_redex(a)) {
        const CTerm& x = a.fun().fun().arg();
        const CTerm& y = a.fun().arg();
        const CTerm& z = a.arg();
        return CTerm::app(CTerm::app(x, z), CTerm::app(y, z));
    }
    if (is_k_redex(a)) {
        return a.fun().arg();
    }
    return std::nullopt;
}

void collect(const CTerm& a, Path& path, std::vector<CReduct>& out,
             const std::function<CTerm(const CTerm&)>& wrap) {
    if (!a.is_app()) {
        return;
    }
    if (auto r = contract(a)) {
        out.push_back({wrap(*r), path});
    }
    path.push_back(0);
    collect(a.fun(), path, out, [&](const CTerm& t) { return wrap(CTerm::app(t, a.arg())); });
    path.back() = 1;
    collect(a.arg(), path, out, [&](const CTerm& t) { return wrap(CTerm::app(a.fun(), t)); });
    path.pop_back();
}

}  // namespace

std::string key(const CTerm& a) {
    std::string out;
    write_key(a, out);
    return out;
}

bool is_closed(const CTerm& a) {
    switch (a.kind()) {
        case CTerm::Kind::Var:
            return false;
        case CTerm::Kind::App:
            return is_closed(a.fun()) && is_closed(a.arg());
        default:
            return true;
    }
}

bool occurs(const CTerm& a, const std::string& x) {
    switch (a.kind()) {
        case CTerm::Kind::Var:
            return a.name() == x;
        case CTerm::Kind::App:
            return occurs(a.fun(), x) || occurs(a.arg(), x);
        default:
            return false;
    }
}

CTerm csubst(const CTerm& a, const CTerm& b, const std::string& x) {
    switch (a.kind()) {
        case CTerm::Kind::Var:
            return a.name() == x ? b : a;
        case CTerm::Kind::App:
            return CTerm::app(csubst(a.fun(), b, x), csubst(a.arg(), b, x));
        default:
            return a;
    }
}

std::vector<CReduct> creduce_step(const CTerm& a) {
    std::vector<CReduct> out;
    Path path;
    collect(a, path, out, [](const CTerm& t) { return t; });
    return out;
}

std::optional<CTerm> cstep_leftmost(const CTerm& a) {
    if (!a.is_app()) {
        return std::nullopt;
    }
    if (auto r = contract(a)) {
        return r;
    }
    if (auto f = cstep_leftmost(a.fun())) {
        return CTerm::app(std::move(*f), a.arg());
    }
    if (auto x = cstep_leftmost(a.arg())) {
        return CTerm::app(a.fun(), std::move(*x));
    }
    return std::nullopt;
}

CNormalizeResult cnormalize(const CTerm& a, std::size_t fuel) {
    if (fuel == 0) {
        throw UsageError("cnormalize: fuel must be at least 1");
    }
    CTerm current = a;
    std::size_t steps = 0;
    while (true) {
        auto next = cstep_leftmost(current);
        if (!next) {
            return {current, steps, false};
        }
        if (steps == fuel) {
            return {current, steps, true};
        }
        current = std::move(*next);
        ++steps;
    }
}

CGraph creduction_graph(const CTerm& a, std::size_t max_vertices, std::size_t max_depth) {
    if (max_vertices == 0 || max_depth == 0) {
        throw UsageError("creduction_graph: budgets must be at least 1");
    }
    return explore_reductions(
        a,
        [](const CTerm& t) {
            std::vector<std::pair<CTerm, Path>> out;
            for (auto& r : creduce_step(t)) {
                out.emplace_back(std::move(r.term), std::move(r.position));
            }
            return out;
        },
        [](const CTerm& t) { return key(t); }, max_vertices, max_depth);
}

CTerm bracket_abstract(const std::string& x, const CTerm& a) {
    switch (a.kind()) {
        case CTerm::Kind::Var:
            if (a.name() == x) {
                return i();
            }
            return CTerm::app(CTerm::k(), a);
        case CTerm::Kind::S:
        case CTerm::Kind::K:
            return CTerm::app(CTerm::k(), a);
        case CTerm::Kind::App:
            if (is_closed(a)) {
                return CTerm::app(CTerm::k(), a);
            }
            return capply(CTerm::s(), {bracket_abstract(x, a.fun()), bracket_abstract(x, a.arg())});
    }
    return a;
}

CTerm to_combinatory(const untyped::Term& m) {
    switch (m.kind()) {
        case untyped::Term::Kind::Var:
            return CTerm::var(m.name());
        case untyped::Term::Kind::App:
            return CTerm::app(to_combinatory(m.fun()), to_combinatory(m.arg()));
        case untyped::Term::Kind::Abs:
            return bracket_abstract(m.name(), to_combinatory(m.body()));
    }
    return CTerm::var(m.name());
}

untyped::Term to_lambda(const CTerm& a) {
    using untyped::Term;
    switch (a.kind()) {
        case CTerm::Kind::Var:
            return Term::var(a.name());
        case CTerm::Kind::S: {
            Term x = Term::var("x");
            Term y = Term::var("y");
            Term z = Term::var("z");
            return untyped::lambda({"x", "y", "z"}, Term::app(Term::app(x, z), Term::app(y, z)));
        }
        case CTerm::Kind::K:
            return untyped::lambda({"x", "y"}, Term::var("x"));
        case CTerm::Kind::App:
            return Term::app(to_lambda(a.fun()), to_lambda(a.arg()));
    }
    return Term::var(a.name());
}

RoundtripResult roundtrip_check(const untyped::Term& m, std::size_t fuel) {
    auto direct = untyped::normalize(m, untyped::Mode::Beta, fuel);
    auto back = untyped::normalize(to_lambda(to_combinatory(m)), untyped::Mode::Beta, fuel);
    if (direct.exhausted || back.exhausted) {
        return {false, true};
    }
    return {untyped::alpha_eq(direct.term, back.term), false};
}

std::vector<AxiomCheck> verify_lambda_algebra_axioms(std::size_t fuel) {
    const CTerm s = CTerm::s();
    const CTerm k = CTerm::k();
    const CTerm x = CTerm::var("x");
    const CTerm y = CTerm::var("y");
    const CTerm z = CTerm::var("z");
    const CTerm id = i();
    const CTerm o = one();
    auto a = [](CTerm f, std::initializer_list<CTerm> args) { return capply(std::move(f), args); };

    struct Axiom {
        std::string label;
        CTerm lhs;
        CTerm rhs;
    };
    std::vector<Axiom> axioms{
        {"a", a(o, {k}), k},
        {"b", a(o, {s}), s},
        {"c", a(o, {a(k, {x})}), a(k, {x})},
        {"d", a(o, {a(s, {x})}), a(s, {x})},
        {"e", a(o, {a(s, {x, y})}), a(s, {x, y})},
        {"f", a(s, {a(s, {a(k, {k}), x}), y}), a(o, {x})},
        {"g", a(s, {a(s, {a(s, {a(k, {s}), x}), y}), z}),
         a(s, {a(s, {x, z}), a(s, {y, z})})},
        {"h", a(k, {a(x, {y})}), a(s, {a(k, {x}), a(k, {y})})},
        {"i", a(s, {a(k, {x}), id}), a(o, {x})},
    };

    std::vector<AxiomCheck> out;
    for (const auto& ax : axioms) {
        CTerm lhs = ax.lhs;
        CTerm rhs = ax.rhs;
        for (const char* v : {"z", "y", "x"}) {
            if (occurs(ax.lhs, v) || occurs(ax.rhs, v)) {
                lhs = bracket_abstract(v, lhs);
                rhs = bracket_abstract(v, rhs);
            }
        }
        auto l = untyped::normalize(to_lambda(lhs), untyped::Mode::Beta, fuel);
        auto r = untyped::normalize(to_lambda(rhs), untyped::Mode::Beta, fuel);
        bool exhausted = l.exhausted || r.exhausted;
        bool holds = !exhausted && untyped::alpha_eq(l.term, r.term);
        out.push_back({ax.label, ax.lhs, ax.rhs, holds, exhausted});
    }
    return out;
}

}  // namespace lcw::combinatory

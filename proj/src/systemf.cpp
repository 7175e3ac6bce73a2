#include "lcw/systemf.hpp"

#include <algorithm>
#include <functional>

#include "lcw/names.hpp"
#include "lcw/typed_term.hpp"

namespace lcw::systemf {

using TK = FType::Kind;
using MK = FTerm::Kind;

FType FType::var(std::string name) {
    return FType(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}, 1}));
}

FType FType::arrow(FType a, FType b) {
    std::size_t size = 1 + a.size() + b.size();
    return FType(std::make_shared<const Node>(Node{Kind::Arrow, "", {std::move(a), std::move(b)}, size}));
}

FType FType::forall(std::string alpha, FType body) {
    std::size_t size = 1 + body.size();
    return FType(std::make_shared<const Node>(Node{Kind::Forall, std::move(alpha), {std::move(body)}, size}));
}

bool FType::operator==(const FType& o) const {
    return node_ == o.node_ || type_key(*this) == type_key(o);
}

std::set<std::string> ftv(const FType& a) {
    switch (a.kind()) {
        case TK::Var: return {a.name()};
        case TK::Arrow: {
            auto out = ftv(a.left());
            for (const auto& v : ftv(a.right())) out.insert(v);
            return out;
        }
        case TK::Forall: {
            auto out = ftv(a.body());
            out.erase(a.name());
            return out;
        }
    }
    return {};
}

std::set<std::string> type_names(const FType& a) {
    switch (a.kind()) {
        case TK::Var: return {a.name()};
        case TK::Arrow: {
            auto out = type_names(a.left());
            for (const auto& v : type_names(a.right())) out.insert(v);
            return out;
        }
        case TK::Forall: {
            auto out = type_names(a.body());
            out.insert(a.name());
            return out;
        }
    }
    return {};
}

namespace {

void type_key_into(const FType& a, std::vector<std::string>& env, std::string& out) {
    switch (a.kind()) {
        case TK::Var: {
            auto it = std::find(env.rbegin(), env.rend(), a.name());
            if (it == env.rend()) {
                out += "'" + a.name();
            } else {
                out += "#" + std::to_string(it - env.rbegin());
            }
            out += ' ';
            return;
        }
        case TK::Arrow:
            out += "(> ";
            type_key_into(a.left(), env, out);
            type_key_into(a.right(), env, out);
            out += ") ";
            return;
        case TK::Forall:
            out += "(A ";
            env.push_back(a.name());
            type_key_into(a.body(), env, out);
            env.pop_back();
            out += ") ";
            return;
    }
}

}  // namespace

std::string type_key(const FType& a) {
    std::vector<std::string> env;
    std::string out;
    type_key_into(a, env, out);
    return out;
}

FType ftype_subst(const FType& a, const FType& b, const std::string& alpha) {
    switch (a.kind()) {
        case TK::Var:
            return a.name() == alpha ? b : a;
        case TK::Arrow:
            return FType::arrow(ftype_subst(a.left(), b, alpha), ftype_subst(a.right(), b, alpha));
        case TK::Forall: {
            if (a.name() == alpha || !ftv(a.body()).count(alpha)) {
                return a;
            }
            auto fb = ftv(b);
            if (!fb.count(a.name())) {
                return FType::forall(a.name(), ftype_subst(a.body(), b, alpha));
            }
            auto taken = type_names(a.body());
            for (const auto& v : fb) taken.insert(v);
            taken.insert(alpha);
            std::string fresh = fresh_name(a.name(), taken);
            FType body = ftype_subst(a.body(), FType::var(fresh), a.name());
            return FType::forall(fresh, ftype_subst(body, b, alpha));
        }
    }
    return a;
}

FTerm FTerm::var(std::string x) {
    return FTerm(std::make_shared<const Node>(Node{Kind::Var, std::move(x), std::nullopt, {}, 1}));
}

FTerm FTerm::app(FTerm f, FTerm a) {
    std::size_t size = 1 + f.size() + a.size();
    return FTerm(std::make_shared<const Node>(Node{Kind::App, "", std::nullopt, {std::move(f), std::move(a)}, size}));
}

FTerm FTerm::abs(std::string x, FType annot, FTerm body) {
    std::size_t size = 1 + body.size();
    return FTerm(std::make_shared<const Node>(Node{Kind::Abs, std::move(x), std::move(annot), {std::move(body)}, size}));
}

FTerm FTerm::tyapp(FTerm f, FType a) {
    std::size_t size = 1 + f.size();
    return FTerm(std::make_shared<const Node>(Node{Kind::TyApp, "", std::move(a), {std::move(f)}, size}));
}

FTerm FTerm::tyabs(std::string alpha, FTerm body) {
    std::size_t size = 1 + body.size();
    return FTerm(std::make_shared<const Node>(Node{Kind::TyAbs, std::move(alpha), std::nullopt, {std::move(body)}, size}));
}

FTerm apply(FTerm f, const std::vector<FTerm>& args) {
    for (const auto& a : args) f = FTerm::app(std::move(f), a);
    return f;
}

std::set<std::string> free_vars(const FTerm& m) {
    switch (m.kind()) {
        case MK::Var: return {m.name()};
        case MK::App: {
            auto out = free_vars(m.child(0));
            for (const auto& v : free_vars(m.child(1))) out.insert(v);
            return out;
        }
        case MK::Abs: {
            auto out = free_vars(m.child(0));
            out.erase(m.name());
            return out;
        }
        default: return free_vars(m.child(0));
    }
}

std::set<std::string> ftv(const FTerm& m) {
    switch (m.kind()) {
        case MK::Var: return {};
        case MK::App: {
            auto out = ftv(m.child(0));
            for (const auto& v : ftv(m.child(1))) out.insert(v);
            return out;
        }
        case MK::Abs:
        case MK::TyApp: {
            auto out = ftv(m.child(0));
            for (const auto& v : ftv(m.type())) out.insert(v);
            return out;
        }
        case MK::TyAbs: {
            auto out = ftv(m.child(0));
            out.erase(m.name());
            return out;
        }
    }
    return {};
}

std::set<std::string> all_names(const FTerm& m) {
    std::set<std::string> out;
    if (m.is(MK::Var) || m.is(MK::Abs)) out.insert(m.name());
    for (const auto& c : m.children()) {
        for (const auto& v : all_names(c)) out.insert(v);
    }
    return out;
}

std::set<std::string> type_names(const FTerm& m) {
    std::set<std::string> out;
    if (m.is(MK::Abs) || m.is(MK::TyApp)) out = type_names(m.type());
    if (m.is(MK::TyAbs)) out.insert(m.name());
    for (const auto& c : m.children()) {
        for (const auto& v : type_names(c)) out.insert(v);
    }
    return out;
}

namespace {

void key_into(const FTerm& m, std::vector<std::string>& env, std::vector<std::string>& tenv, std::string& out) {
    switch (m.kind()) {
        case MK::Var: {
            auto it = std::find(env.rbegin(), env.rend(), m.name());
            out += it == env.rend() ? "'" + m.name() : "#" + std::to_string(it - env.rbegin());
            out += ' ';
            return;
        }
        case MK::App:
            out += "(@ ";
            key_into(m.child(0), env, tenv, out);
            key_into(m.child(1), env, tenv, out);
            out += ") ";
            return;
        case MK::Abs:
            out += "(L ";
            type_key_into(m.type(), tenv, out);
            env.push_back(m.name());
            key_into(m.child(0), env, tenv, out);
            env.pop_back();
            out += ") ";
            return;
        case MK::TyApp:
            out += "(T ";
            key_into(m.child(0), env, tenv, out);
            type_key_into(m.type(), tenv, out);
            out += ") ";
            return;
        case MK::TyAbs:
            out += "(G ";
            tenv.push_back(m.name());
            key_into(m.child(0), env, tenv, out);
            tenv.pop_back();
            out += ") ";
            return;
    }
}

}  // namespace

std::string canonical_key(const FTerm& m) {
    std::vector<std::string> env, tenv;
    std::string out;
    key_into(m, env, tenv, out);
    return out;
}

bool alpha_eq(const FTerm& a, const FTerm& b) { return canonical_key(a) == canonical_key(b); }

FTerm type_subst(const FTerm& m, const FType& b, const std::string& alpha) {
    switch (m.kind()) {
        case MK::Var:
            return m;
        case MK::App:
            return FTerm::app(type_subst(m.child(0), b, alpha), type_subst(m.child(1), b, alpha));
        case MK::Abs:
            return FTerm::abs(m.name(), ftype_subst(m.type(), b, alpha), type_subst(m.child(0), b, alpha));
        case MK::TyApp:
            return FTerm::tyapp(type_subst(m.child(0), b, alpha), ftype_subst(m.type(), b, alpha));
        case MK::TyAbs: {
            if (m.name() == alpha || !ftv(m.child(0)).count(alpha)) {
                return m;
            }
            auto fb = ftv(b);
            if (!fb.count(m.name())) {
                return FTerm::tyabs(m.name(), type_subst(m.child(0), b, alpha));
            }
            auto taken = type_names(m.child(0));
            for (const auto& v : fb) taken.insert(v);
            taken.insert(alpha);
            std::string fresh = fresh_name(m.name(), taken);
            FTerm body = type_subst(m.child(0), FType::var(fresh), m.name());
            return FTerm::tyabs(fresh, type_subst(body, b, alpha));
        }
    }
    return m;
}

FTerm subst(const FTerm& m, const FTerm& n, const std::string& x) {
    switch (m.kind()) {
        case MK::Var:
            return m.name() == x ? n : m;
        case MK::App:
            return FTerm::app(subst(m.child(0), n, x), subst(m.child(1), n, x));
        case MK::TyApp:
            return FTerm::tyapp(subst(m.child(0), n, x), m.type());
        case MK::Abs: {
            if (m.name() == x || !free_vars(m.child(0)).count(x)) {
                return m;
            }
            auto fv = free_vars(n);
            if (!fv.count(m.name())) {
                return FTerm::abs(m.name(), m.type(), subst(m.child(0), n, x));
            }
            auto taken = all_names(m.child(0));
            for (const auto& v : all_names(n)) taken.insert(v);
            taken.insert(x);
            std::string fresh = fresh_name(m.name(), taken);
            FTerm body = subst(m.child(0), FTerm::var(fresh), m.name());
            return FTerm::abs(fresh, m.type(), subst(body, n, x));
        }
        case MK::TyAbs: {
            if (!free_vars(m.child(0)).count(x)) {
                return m;
            }
            auto fn = ftv(n);
            if (!fn.count(m.name())) {
                return FTerm::tyabs(m.name(), subst(m.child(0), n, x));
            }
            auto taken = type_names(m.child(0));
            for (const auto& v : type_names(n)) taken.insert(v);
            std::string fresh = fresh_name(m.name(), taken);
            FTerm body = type_subst(m.child(0), FType::var(fresh), m.name());
            return FTerm::tyabs(fresh, subst(body, n, x));
        }
    }
    return m;
}

namespace {

std::string show(const FType& a);

std::string show_atom(const FType& a) {
    return a.is(TK::Var) ? a.name() : "(" + show(a) + ")";
}

std::string show(const FType& a) {
    switch (a.kind()) {
        case TK::Var: return a.name();
        case TK::Arrow: return (a.left().is(TK::Var) ? a.left().name() : show_atom(a.left())) + " -> " + show(a.right());
        case TK::Forall: return "forall " + a.name() + ". " + show(a.body());
    }
    return "";
}

class Checker {
  public:
    FType check(FContext& ctx, const FTerm& m) {
        switch (m.kind()) {
            case MK::Var:
                for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) {
                    if (it->first == m.name()) return it->second;
                }
                fail("unbound variable '" + m.name() + "'", "var");
            case MK::App: {
                FType f = sub(ctx, m, 0);
                FType a = sub(ctx, m, 1);
                if (!f.is(TK::Arrow)) fail("applying a term of type " + show(f), "app");
                if (f.left() != a) {
                    fail("argument has type " + show(a) + " but " + show(f.left()) + " is expected", "app");
                }
                return f.right();
            }
            case MK::Abs: {
                ctx.emplace_back(m.name(), m.type());
                FType b = sub(ctx, m, 0);
                ctx.pop_back();
                return FType::arrow(m.type(), b);
            }
            case MK::TyApp: {
                FType f = sub(ctx, m, 0);
                if (!f.is(TK::Forall)) fail("type application of a term of type " + show(f), "typeapp");
                return ftype_subst(f.body(), m.type(), f.name());
            }
            case MK::TyAbs: {
                for (const auto& e : ctx) {
                    if (ftv(e.second).count(m.name())) {
                        fail("type variable '" + m.name() + "' is free in the context (" + e.first + ")", "typeabs");
                    }
                }
                return FType::forall(m.name(), sub(ctx, m, 0));
            }
        }
        fail("unknown term", "var");
    }

  private:
    FType sub(FContext& ctx, const FTerm& m, std::size_t i) {
        path_.push_back(static_cast<int>(i));
        FType t = check(ctx, m.child(i));
        path_.pop_back();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg, const std::string& rule) {
        throw typed::TypeError(msg, path_, rule);
    }

    Path path_;
};

}  // namespace

FType ftypecheck(const FContext& ctx, const FTerm& m) {
    FContext work = ctx;
    return Checker().check(work, m);
}

namespace {

std::optional<FReduct> root_redex(const FTerm& m, bool eta) {
    if (m.is(MK::App) && m.child(0).is(MK::Abs)) {
        const FTerm& f = m.child(0);
        return FReduct{subst(f.child(0), m.child(1), f.name()), {}, "beta"};
    }
    if (m.is(MK::TyApp) && m.child(0).is(MK::TyAbs)) {
        const FTerm& f = m.child(0);
        return FReduct{type_subst(f.child(0), m.type(), f.name()), {}, "beta-forall"};
    }
    if (!eta) return std::nullopt;
    if (m.is(MK::Abs) && m.child(0).is(MK::App)) {
        const FTerm& b = m.child(0);
        if (b.child(1).is(MK::Var) && b.child(1).name() == m.name() && !free_vars(b.child(0)).count(m.name())) {
            return FReduct{b.child(0), {}, "eta"};
        }
    }
    if (m.is(MK::TyAbs) && m.child(0).is(MK::TyApp)) {
        const FTerm& b = m.child(0);
        if (b.type().is(TK::Var) && b.type().name() == m.name() && !ftv(b.child(0)).count(m.name())) {
            return FReduct{b.child(0), {}, "eta-forall"};
        }
    }
    return std::nullopt;
}

FTerm with_child(const FTerm& m, std::size_t i, FTerm c) {
    switch (m.kind()) {
        case MK::App:
            return i == 0 ? FTerm::app(std::move(c), m.child(1)) : FTerm::app(m.child(0), std::move(c));
        case MK::Abs: return FTerm::abs(m.name(), m.type(), std::move(c));
        case MK::TyApp: return FTerm::tyapp(std::move(c), m.type());
        case MK::TyAbs: return FTerm::tyabs(m.name(), std::move(c));
        default: return m;
    }
}

// Renames each type abstraction whose variable is free in the annotation of
// an enclosing term binder, so that reducts keep satisfying the typeabs side
// condition literally.
FTerm hygienic(const FTerm& m, std::set<std::string>& scope) {
    switch (m.kind()) {
        case MK::Var:
            return m;
        case MK::App: {
            FTerm f = hygienic(m.child(0), scope);
            return FTerm::app(f, hygienic(m.child(1), scope));
        }
        case MK::TyApp:
            return FTerm::tyapp(hygienic(m.child(0), scope), m.type());
        case MK::Abs: {
            auto saved = scope;
            for (const auto& v : ftv(m.type())) scope.insert(v);
            FTerm body = hygienic(m.child(0), scope);
            scope = std::move(saved);
            return FTerm::abs(m.name(), m.type(), body);
        }
        case MK::TyAbs: {
            if (!scope.count(m.name())) {
                return FTerm::tyabs(m.name(), hygienic(m.child(0), scope));
            }
            auto taken = type_names(m.child(0));
            for (const auto& v : scope) taken.insert(v);
            std::string fresh = fresh_name(m.name(), taken);
            FTerm body = type_subst(m.child(0), FType::var(fresh), m.name());
            return FTerm::tyabs(fresh, hygienic(body, scope));
        }
    }
    return m;
}

FTerm hygienic_free(const FTerm& m) {
    auto scope = ftv(m);
    return hygienic(m, scope);
}

void collect(const FTerm& m, bool eta, Path& path, std::vector<FReduct>& out,
             const std::function<FTerm(FTerm)>& rebuild) {
    if (auto r = root_redex(m, eta)) {
        out.push_back({hygienic_free(rebuild(r->term)), path, r->rule});
    }
    for (std::size_t i = 0; i < m.children().size(); ++i) {
        path.push_back(static_cast<int>(i));
        collect(m.child(i), eta, path, out, [&](FTerm c) { return rebuild(with_child(m, i, std::move(c))); });
        path.pop_back();
    }
}

std::optional<FTerm> first_step(const FTerm& m, bool eta) {
    if (auto r = root_redex(m, eta)) return r->term;
    for (std::size_t i = 0; i < m.children().size(); ++i) {
        if (auto c = first_step(m.child(i), eta)) return with_child(m, i, std::move(*c));
    }
    return std::nullopt;
}

}  // namespace

FTerm hygienic(const FTerm& m, const FContext& ctx) {
    auto scope = ftv(m);
    for (const auto& e : ctx) {
        for (const auto& v : ftv(e.second)) scope.insert(v);
    }
    return hygienic(m, scope);
}

namespace {

FTerm insert_named(const FTerm& m, const std::function<std::optional<FTerm>(const std::string&)>& lookup,
                   std::set<std::string>& scope, std::set<std::string>& bound) {
    switch (m.kind()) {
        case MK::Var: {
            if (bound.count(m.name())) return m;
            auto t = lookup(m.name());
            if (!t) return m;
            auto local = scope;
            return hygienic(*t, local);
        }
        case MK::App: {
            FTerm f = insert_named(m.child(0), lookup, scope, bound);
            return FTerm::app(f, insert_named(m.child(1), lookup, scope, bound));
        }
        case MK::TyApp:
            return FTerm::tyapp(insert_named(m.child(0), lookup, scope, bound), m.type());
        case MK::TyAbs:
            return FTerm::tyabs(m.name(), insert_named(m.child(0), lookup, scope, bound));
        case MK::Abs: {
            auto saved_scope = scope;
            auto saved_bound = bound;
            for (const auto& v : ftv(m.type())) scope.insert(v);
            bound.insert(m.name());
            FTerm body = insert_named(m.child(0), lookup, scope, bound);
            scope = std::move(saved_scope);
            bound = std::move(saved_bound);
            return FTerm::abs(m.name(), m.type(), body);
        }
    }
    return m;
}

std::optional<FTerm> numeral_named(const std::string& x) {
    if (x.empty() || x.size() > 6 || !std::all_of(x.begin(), x.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        return std::nullopt;
    }
    return f_numeral(std::stoul(x));
}

FTerm insert_with(const FTerm& m, const FContext& ctx,
                  const std::function<std::optional<FTerm>(const std::string&)>& lookup) {
    auto scope = ftv(m);
    for (const auto& e : ctx) {
        for (const auto& v : ftv(e.second)) scope.insert(v);
    }
    std::set<std::string> bound;
    for (const auto& e : ctx) bound.insert(e.first);
    return insert_named(m, lookup, scope, bound);
}

}  // namespace

FTerm expand_numerals(const FTerm& m, const FContext& ctx) { return insert_with(m, ctx, numeral_named); }

FTerm with_encodings(const FTerm& m, const FContext& ctx) {
    return insert_with(m, ctx, [](const std::string& x) -> std::optional<FTerm> {
        auto it = f_encodings().find(x);
        if (it != f_encodings().end()) return it->second.term;
        return numeral_named(x);
    });
}

std::vector<FReduct> fstep(const FTerm& m, bool include_eta) {
    std::vector<FReduct> out;
    Path path;
    collect(m, include_eta, path, out, [](FTerm t) { return t; });
    return out;
}

FNormalizeResult fnormalize(const FTerm& m, std::size_t fuel, bool include_eta) {
    if (fuel == 0) {
        throw UsageError("fnormalize: fuel must be at least 1");
    }
    FNormalizeResult r{m, 0, false};
    for (bool eta : {false, true}) {
        if (eta && !include_eta) break;
        while (auto next = first_step(r.term, eta)) {
            if (r.steps == fuel) {
                r.exhausted = true;
                return r;
            }
            r.term = hygienic_free(*next);
            ++r.steps;
        }
    }
    return r;
}

FGraph freduction_graph(const FTerm& m, bool include_eta, std::size_t max_vertices, std::size_t max_depth) {
    if (max_vertices == 0 || max_depth == 0) {
        throw UsageError("freduction_graph: budgets must be at least 1");
    }
    return explore_reductions(
        m,
        [&](const FTerm& t) {
            std::vector<std::pair<FTerm, Path>> out;
            for (auto& r : fstep(t, include_eta)) out.emplace_back(std::move(r.term), std::move(r.position));
            return out;
        },
        [](const FTerm& t) { return canonical_key(t); }, max_vertices, max_depth);
}

namespace {

std::set<std::string> context_ftv(const FContext& ctx) {
    std::set<std::string> out;
    for (const auto& e : ctx) {
        for (const auto& v : ftv(e.second)) out.insert(v);
    }
    return out;
}

class Expander {
  public:
    FTerm expand(FContext& ctx, const FTerm& n) {
        switch (n.kind()) {
            case MK::Abs: {
                ctx.emplace_back(n.name(), n.type());
                FTerm body = expand(ctx, n.child(0));
                ctx.pop_back();
                return FTerm::abs(n.name(), n.type(), body);
            }
            case MK::TyAbs:
                return FTerm::tyabs(n.name(), expand(ctx, n.child(0)));
            default: {
                FTerm spine = neutral(ctx, n);
                return eta(ctx, spine, ftypecheck(ctx, spine));
            }
        }
    }

  private:
    FTerm neutral(FContext& ctx, const FTerm& n) {
        switch (n.kind()) {
            case MK::App: return FTerm::app(neutral(ctx, n.child(0)), expand(ctx, n.child(1)));
            case MK::TyApp: return FTerm::tyapp(neutral(ctx, n.child(0)), n.type());
            case MK::Var: return n;
            default: throw UsageError("long_normal_form: term is not beta-normal");
        }
    }

    FTerm eta(FContext& ctx, const FTerm& cur, const FType& a) {
        switch (a.kind()) {
            case TK::Var:
                return cur;
            case TK::Arrow: {
                std::set<std::string> taken = all_names(cur);
                for (const auto& e : ctx) taken.insert(e.first);
                std::string w = taken.count("w") ? fresh_name("w", taken) : "w";
                ctx.emplace_back(w, a.left());
                FTerm arg = eta(ctx, FTerm::var(w), a.left());
                FTerm body = eta(ctx, FTerm::app(cur, arg), a.right());
                ctx.pop_back();
                return FTerm::abs(w, a.left(), body);
            }
            case TK::Forall: {
                std::set<std::string> taken = context_ftv(ctx);
                for (const auto& v : ftv(cur)) taken.insert(v);
                std::string alpha = a.name();
                if (taken.count(alpha)) {
                    for (const auto& v : type_names(a)) taken.insert(v);
                    alpha = fresh_name(alpha, taken);
                }
                FType body = ftype_subst(a.body(), FType::var(alpha), a.name());
                return FTerm::tyabs(alpha, eta(ctx, FTerm::tyapp(cur, FType::var(alpha)), body));
            }
        }
        return cur;
    }
};

}  // namespace

FTerm long_normal_form(const FTerm& m, const FContext& ctx, std::size_t fuel) {
    ftypecheck(ctx, m);
    auto nf = fnormalize(m, fuel);
    if (nf.exhausted) {
        throw UsageError("long_normal_form: normalization exceeded fuel");
    }
    FContext work = ctx;
    return Expander().expand(work, hygienic(nf.term, ctx));
}

}  // namespace lcw::systemf

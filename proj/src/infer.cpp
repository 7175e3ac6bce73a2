#include "lcw/infer.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "lcw/names.hpp"

namespace lcw::infer {

using Kind = Type::Kind;

Type apply_subst(const TypeSubstitution& s, const Type& a) {
    switch (a.kind()) {
        case Kind::Var: {
            auto it = s.find(a.name());
            return it == s.end() ? a : it->second;
        }
        case Kind::Arrow:
            return Type::arrow(apply_subst(s, a.left()), apply_subst(s, a.right()));
        case Kind::Product:
            return Type::product(apply_subst(s, a.left()), apply_subst(s, a.right()));
        case Kind::Sum:
            return Type::sum(apply_subst(s, a.left()), apply_subst(s, a.right()));
        default:
            return a;
    }
}

Context apply_subst(const TypeSubstitution& s, const Context& ctx) {
    Context out;
    for (const auto& [x, a] : ctx) {
        out.emplace_back(x, apply_subst(s, a));
    }
    return out;
}

TypeSubstitution compose(const TypeSubstitution& t, const TypeSubstitution& s) {
    TypeSubstitution r;
    for (const auto& [x, a] : s) {
        Type img = apply_subst(t, a);
        if (!(img.is(Kind::Var) && img.name() == x)) {
            r.emplace(x, img);
        }
    }
    for (const auto& [x, a] : t) {
        if (!s.count(x) && !(a.is(Kind::Var) && a.name() == x)) {
            r.emplace(x, a);
        }
    }
    return r;
}

std::string to_string(const TypeSubstitution& s, bool unicode) {
    std::string out = "[";
    bool first = true;
    for (const auto& [x, a] : s) {
        if (!first) out += ", ";
        out += x + (unicode ? " ↦ " : " := ") + types::to_string(a, unicode);
        first = false;
    }
    return out + "]";
}

namespace {

std::set<std::string> vars_of(const std::vector<Type>& as, const std::vector<Type>& bs) {
    std::set<std::string> out;
    for (const auto* list : {&as, &bs}) {
        for (const auto& a : *list) {
            for (const auto& v : types::type_vars(a)) out.insert(v);
        }
    }
    return out;
}

std::vector<Type> apply_all(const TypeSubstitution& s, const std::vector<Type>& as) {
    std::vector<Type> out;
    for (const auto& a : as) out.push_back(apply_subst(s, a));
    return out;
}

struct Unifier {
    MguResult& result;
    std::size_t depth = 0;

    std::optional<TypeSubstitution> run(const std::vector<Type>& as, const std::vector<Type>& bs) {
        auto before = vars_of(as, bs).size();
        auto r = dispatch(as, bs);
        if (r) {
            auto after = vars_of(apply_all(*r, as), {}).size();
            result.live.push_back({before, after, r->empty()});
        }
        return r;
    }

    std::optional<TypeSubstitution> fail(UnifyFailureKind kind, int clause, const Type& a,
                                         const Type& b) {
        if (!result.failure) {
            result.failure = UnifyFailure{kind, clause, a, b};
        }
        return std::nullopt;
    }

    std::optional<TypeSubstitution> dispatch(const std::vector<Type>& as, const std::vector<Type>& bs) {
        if (as.empty()) {
            return TypeSubstitution{};
        }
        if (as.size() > 1) {
            result.trace.push_back({11, as, bs, depth});
            ++depth;
            std::vector<Type> ta(as.begin() + 1, as.end());
            std::vector<Type> tb(bs.begin() + 1, bs.end());
            auto rho = run(ta, tb);
            if (!rho) {
                --depth;
                return std::nullopt;
            }
            auto tau = run({apply_subst(*rho, as[0])}, {apply_subst(*rho, bs[0])});
            --depth;
            if (!tau) return std::nullopt;
            return compose(*tau, *rho);
        }
        const Type& a = as[0];
        const Type& b = bs[0];
        auto note = [&](int clause) { result.trace.push_back({clause, as, bs, depth}); };
        if (a.is(Kind::Var)) {
            if (b.is(Kind::Var) && b.name() == a.name()) {
                note(1);
                return TypeSubstitution{};
            }
            if (!types::occurs(a.name(), b)) {
                note(2);
                return TypeSubstitution{{a.name(), b}};
            }
            note(3);
            return fail(UnifyFailureKind::Occurs, 3, a, b);
        }
        if (b.is(Kind::Var)) {
            if (!types::occurs(b.name(), a)) {
                note(4);
                return TypeSubstitution{{b.name(), a}};
            }
            note(5);
            return fail(UnifyFailureKind::Occurs, 5, a, b);
        }
        if (a.is(Kind::Base) && b.is(Kind::Base) && a.name() == b.name()) {
            note(6);
            return TypeSubstitution{};
        }
        if ((a.is_arrow() && b.is_arrow()) || (a.is_product() && b.is_product())) {
            note(a.is_arrow() ? 7 : 8);
            ++depth;
            auto r = run({a.left(), a.right()}, {b.left(), b.right()});
            --depth;
            return r;
        }
        if (a.is(Kind::Unit) && b.is(Kind::Unit)) {
            note(9);
            return TypeSubstitution{};
        }
        note(10);
        return fail(UnifyFailureKind::Clash, 10, a, b);
    }
};

}  // namespace

MguResult mgu(const std::vector<Type>& as, const std::vector<Type>& bs) {
    if (as.size() != bs.size()) {
        throw UsageError("mgu: template lists differ in length");
    }
    MguResult result;
    Unifier u{result};
    result.sigma = u.run(as, bs);
    if (result.sigma) {
        result.failure.reset();
    }
    return result;
}

MguResult mgu(const Type& a, const Type& b) { return mgu(std::vector<Type>{a}, std::vector<Type>{b}); }

Type FreshVars::next() {
    while (true) {
        std::string name = "T" + std::to_string(counter_++);
        if (!avoid_.count(name)) {
            return Type::var(name);
        }
    }
}

namespace {


using TK = typed::TypedTerm::Kind;

struct Inferencer {
    FreshVars& fresh;
    InferResult& result;
    Path path;

    std::optional<TypeSubstitution> unify(const Type& a, const Type& b) {
        auto r = mgu(a, b);
        result.trace.insert(result.trace.end(), r.trace.begin(), r.trace.end());
        if (!r.ok()) {
            result.failure = InferFailure{path, "cannot unify " + types::to_string(a) + " with " +
                                                    types::to_string(b),
                                          r.failure};
        }
        return r.sigma;
    }

    std::optional<TypeSubstitution> fail(const std::string& msg) {
        result.failure = InferFailure{path, msg, std::nullopt};
        return std::nullopt;
    }

    std::optional<TypeSubstitution> child(std::size_t i, const Context& ctx, const TypedTerm& m,
                                          const Type& b) {
        path.push_back(static_cast<int>(i));
        auto r = infer(ctx, m, b);
        path.pop_back();
        return r;
    }

    std::optional<TypeSubstitution> infer(const Context& ctx, const TypedTerm& m, const Type& b) {
        switch (m.kind()) {
            case TK::Var: {
                auto a = typed::lookup(ctx, m.name());
                if (!a) return fail("unbound variable '" + m.name() + "'");
                return unify(*a, b);
            }
            case TK::App: {
                Type x = fresh.next();
                auto sigma = child(0, ctx, m.child(0), Type::arrow(x, b));
                if (!sigma) return std::nullopt;
                auto tau = child(1, apply_subst(*sigma, ctx), m.child(1), apply_subst(*sigma, x));
                if (!tau) return std::nullopt;
                return compose(*tau, *sigma);
            }
            case TK::Abs: {
                Type a = m.annot() ? *m.annot() : fresh.next();
                if (m.annot() && types::has_sums(a)) return fail("sum types are not supported by inference");
                result.binders.insert_or_assign(path, a);
                Type x = fresh.next();
                auto sigma = unify(b, Type::arrow(a, x));
                if (!sigma) return std::nullopt;
                Context inner = apply_subst(*sigma, ctx);
                inner.emplace_back(m.name(), apply_subst(*sigma, a));
                auto tau = child(0, inner, m.child(0), apply_subst(*sigma, x));
                if (!tau) return std::nullopt;
                return compose(*tau, *sigma);
            }
            case TK::Pair: {
                Type x = fresh.next();
                Type y = fresh.next();
                auto sigma = unify(b, Type::product(x, y));
                if (!sigma) return std::nullopt;
                auto tau = child(0, apply_subst(*sigma, ctx), m.child(0), apply_subst(*sigma, x));
                if (!tau) return std::nullopt;
                TypeSubstitution ts = compose(*tau, *sigma);
                auto rho = child(1, apply_subst(ts, ctx), m.child(1), apply_subst(ts, y));
                if (!rho) return std::nullopt;
                return compose(*rho, ts);
            }
            case TK::Proj1:
                return child(0, ctx, m.child(0), Type::product(b, fresh.next()));
            case TK::Proj2:
                return child(0, ctx, m.child(0), Type::product(fresh.next(), b));
            case TK::Star:
                return unify(b, Type::unit());
            case TK::In1:
            case TK::In2:
            case TK::Case:
            case TK::Abort:
                return fail("sum types are not supported by inference");
            default:
                return fail("PCF constants are not supported by inference");
        }
    }
};

std::set<std::string> context_vars(const Context& ctx, const Type& b) {
    std::set<std::string> out = types::type_vars(b);
    for (const auto& e : ctx) {
        for (const auto& v : types::type_vars(e.second)) out.insert(v);
    }
    return out;
}

void annotation_vars(const TypedTerm& m, std::set<std::string>& out) {
    if (m.annot()) {
        for (const auto& v : types::type_vars(*m.annot())) out.insert(v);
    }
    for (const auto& c : m.children()) annotation_vars(c, out);
}

}  // namespace

InferResult typeinfer(const Context& ctx, const TypedTerm& m, const Type& b, FreshVars& fresh) {
    InferResult result;
    Inferencer inf{fresh, result, {}};
    result.sigma = inf.infer(ctx, m, b);
    if (result.sigma) {
        result.failure.reset();
    }
    return result;
}

InferResult typeinfer(const Context& ctx, const TypedTerm& m, const Type& b) {
    std::set<std::string> avoid = context_vars(ctx, b);
    annotation_vars(m, avoid);
    FreshVars fresh(std::move(avoid));
    return typeinfer(ctx, m, b, fresh);
}

TypeSubstitution readable_renaming(const std::vector<Type>& ts) {
    std::vector<std::string> order;
    std::function<void(const Type&)> visit = [&](const Type& a) {
        if (a.is(Kind::Var)) {
            if (std::find(order.begin(), order.end(), a.name()) == order.end()) {
                order.push_back(a.name());
            }
            return;
        }
        if (a.is_arrow() || a.is_product() || a.is_sum()) {
            visit(a.left());
            visit(a.right());
        }
    };
    for (const auto& t : ts) visit(t);
    TypeSubstitution s;
    for (std::size_t i = 0; i < order.size(); ++i) {
        std::string name(1, static_cast<char>('A' + i % 26));
        if (i >= 26) name += std::to_string(i / 26);
        s.emplace(order[i], Type::var(name));
    }
    return s;
}

std::vector<Type> rename_readable(const std::vector<Type>& ts) {
    TypeSubstitution s = readable_renaming(ts);
    std::vector<Type> out;
    for (const auto& t : ts) out.push_back(apply_subst(s, t));
    return out;
}

namespace {

TypedTerm annotate(const TypedTerm& m, const std::map<Path, Type>& binders,
                   const TypeSubstitution& s, Path path) {
    std::vector<TypedTerm> kids;
    for (std::size_t i = 0; i < m.children().size(); ++i) {
        path.push_back(static_cast<int>(i));
        kids.push_back(annotate(m.child(i), binders, s, path));
        path.pop_back();
    }
    TypedTerm out = m.with_children(std::move(kids));
    auto it = binders.find(path);
    if (it != binders.end()) {
        out = out.with_annotation(apply_subst(s, it->second));
    }
    return out;
}

}  // namespace

PrincipalResult principal_type(const TypedTerm& m) {
    std::set<std::string> avoid;
    annotation_vars(m, avoid);
    FreshVars fresh(avoid);
    Context ctx;
    for (const auto& x : typed::free_vars(m)) {
        ctx.emplace_back(x, fresh.next());
    }
    Type y = fresh.next();
    InferResult r = typeinfer(ctx, m, y, fresh);
    PrincipalResult out;
    out.trace = r.trace;
    if (!r.ok()) {
        out.failure = r.failure;
        return out;
    }
    std::vector<Type> all{apply_subst(*r.sigma, y)};
    for (const auto& e : ctx) all.push_back(apply_subst(*r.sigma, e.second));
    TypeSubstitution readable = compose(readable_renaming(all), *r.sigma);
    PrincipalType p{apply_subst(readable, y), {}, annotate(m, r.binders, readable, {})};
    for (const auto& e : ctx) {
        p.ctx.emplace_back(e.first, apply_subst(readable, e.second));
    }
    out.principal = p;
    return out;
}

namespace {

bool match(const Type& a, const Type& b, TypeSubstitution& s) {
    if (a.is(Kind::Var)) {
        auto it = s.find(a.name());
        if (it == s.end()) {
            s.emplace(a.name(), b);
            return true;
        }
        return it->second == b;
    }
    if (a.kind() != b.kind()) {
        return false;
    }
    switch (a.kind()) {
        case Kind::Base:
            return a.name() == b.name();
        case Kind::Arrow:
        case Kind::Product:
        case Kind::Sum:
            return match(a.left(), b.left(), s) && match(a.right(), b.right(), s);
        default:
            return true;
    }
}

}  // namespace

std::optional<TypeSubstitution> more_general(const Type& a, const Type& b) {
    TypeSubstitution s;
    if (match(a, b, s)) {
        return s;
    }
    return std::nullopt;
}

}  // namespace lcw::infer

#include "lcw/pcf.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace lcw::pcf {

using typed::Kind;

bool is_pcf_type(const Type& a) {
    switch (a.kind()) {
        case Type::Kind::Base: return a.name() == "bool" || a.name() == "nat";
        case Type::Kind::Unit: return true;
        case Type::Kind::Arrow:
        case Type::Kind::Product: return is_pcf_type(a.left()) && is_pcf_type(a.right());
        default: return false;
    }
}

namespace {

void check_annotations(const TypedTerm& m, Path& path) {
    if (m.is(Kind::Abs) && m.annot() && !is_pcf_type(*m.annot())) {
        throw typed::TypeError("binder '" + m.name() + "' is annotated with a non-PCF type", path, "abs");
    }
    for (std::size_t i = 0; i < m.arity(); ++i) {
        path.push_back(static_cast<int>(i));
        check_annotations(m.child(i), path);
        path.pop_back();
    }
}

}  // namespace

Type pcf_typecheck(const Context& ctx, const TypedTerm& m, Dialect dialect) {
    if (dialect == Dialect::Stlc) dialect = Dialect::Pcf;
    for (const auto& [x, a] : ctx) {
        if (!is_pcf_type(a)) throw typed::TypeError("context entry '" + x + "' has a non-PCF type", {}, "var");
    }
    Path path;
    check_annotations(m, path);
    return typed::typecheck(ctx, m, dialect);
}

bool is_value(const TypedTerm& m) {
    switch (m.kind()) {
        case Kind::True:
        case Kind::False:
        case Kind::Zero:
        case Kind::Star:
        case Kind::Pair:
        case Kind::Abs: return true;
        case Kind::Succ: return is_value(m.child(0));
        default: return false;
    }
}

bool is_result(const TypedTerm& m) {
    return m.is(Kind::True) || m.is(Kind::False) || typed::as_numeral(m).has_value();
}

namespace {

class Stepper {
  public:
    Stepper(Dialect dialect, const Context& ctx) : dialect_(dialect), ctx_(ctx) {}

    StepResult step(const TypedTerm& m) {
        if (is_value(m)) return {StepStatus::IsValue, std::nullopt, "", {}};
        StepResult r = structural(m);
        if (r.status == StepStatus::Stuck && !m.is(Kind::Star) && has_unit_type(m)) {
            return {StepStatus::Stepped, TypedTerm::star(), "unit", {}};
        }
        return r;
    }

  private:
    static StepResult fired(TypedTerm t, const char* rule) { return {StepStatus::Stepped, std::move(t), rule, {}}; }
    static StepResult stuck() { return {StepStatus::Stuck, std::nullopt, "", {}}; }

    /// Steps child `i` and rebuilds `m` around the result.
    StepResult congruence(const TypedTerm& m, std::size_t i) {
        StepResult r = step(m.child(i));
        if (r.status != StepStatus::Stepped) return stuck();
        std::vector<TypedTerm> kids = m.children();
        kids[i] = *r.term;
        r.term = m.with_children(std::move(kids));
        r.position.insert(r.position.begin(), static_cast<int>(i));
        return r;
    }

    StepResult structural(const TypedTerm& m) {
        switch (m.kind()) {
            case Kind::App: {
                const TypedTerm& f = m.child(0);
                if (f.is(Kind::Abs)) return fired(typed::subst(f.child(0), m.child(1), f.name()), "beta");
                return congruence(m, 0);
            }
            case Kind::Proj1:
            case Kind::Proj2: {
                const TypedTerm& p = m.child(0);
                if (p.is(Kind::Pair)) {
                    return m.is(Kind::Proj1) ? fired(p.child(0), "pi1") : fired(p.child(1), "pi2");
                }
                return congruence(m, 0);
            }
            case Kind::Succ: return congruence(m, 0);
            case Kind::Pred: {
                const TypedTerm& n = m.child(0);
                if (n.is(Kind::Zero)) return fired(n, "pred-zero");
                if (n.is(Kind::Succ) && is_value(n)) return fired(n.child(0), "pred-succ");
                return congruence(m, 0);
            }
            case Kind::IsZero: {
                const TypedTerm& n = m.child(0);
                if (n.is(Kind::Zero)) return fired(TypedTerm::true_c(), "iszero-zero");
                if (n.is(Kind::Succ) && is_value(n)) return fired(TypedTerm::false_c(), "iszero-succ");
                return congruence(m, 0);
            }
            case Kind::If: {
                const TypedTerm& c = m.child(0);
                if (c.is(Kind::True)) return fired(m.child(1), "if-true");
                if (c.is(Kind::False)) return fired(m.child(2), "if-false");
                return congruence(m, 0);
            }
            case Kind::Fix: return fired(TypedTerm::app(m.child(0), m), "fix");
            case Kind::Por: return por(m);
            default: return stuck();
        }
    }

    StepResult por(const TypedTerm& m) {
        if (dialect_ != Dialect::ParallelPcf) return stuck();
        const TypedTerm& l = m.child(0);
        const TypedTerm& r = m.child(1);
        if (l.is(Kind::True)) return fired(TypedTerm::true_c(), "por-true-left");
        if (r.is(Kind::True)) return fired(TypedTerm::true_c(), "por-true-right");
        if (l.is(Kind::False) && r.is(Kind::False)) return fired(TypedTerm::false_c(), "por-false");
        StepResult sl = step(l);
        StepResult sr = step(r);
        bool left = sl.status == StepStatus::Stepped;
        bool right = sr.status == StepStatus::Stepped;
        if (!left && !right) return stuck();
        TypedTerm nl = left ? *sl.term : l;
        TypedTerm nr = right ? *sr.term : r;
        StepResult out = left ? sl : sr;
        if (left && right) out.rule = sl.rule + "+" + sr.rule;
        out.position.insert(out.position.begin(), left ? 0 : 1);
        out.term = TypedTerm::por(std::move(nl), std::move(nr));
        return out;
    }

    bool has_unit_type(const TypedTerm& m) const {
        try {
            return typed::typecheck(ctx_, m, dialect_).is(Type::Kind::Unit);
        } catch (const typed::TypeError&) {
            return false;
        }
    }

    Dialect dialect_;
    const Context& ctx_;
};

}  // namespace

StepResult small_step(const TypedTerm& m, Dialect dialect, const Context& ctx) {
    if (dialect == Dialect::Stlc) dialect = Dialect::Pcf;
    return Stepper(dialect, ctx).step(m);
}

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::Value: return "value";
        case Outcome::Stuck: return "stuck";
        case Outcome::FuelExhausted: return "fuel exhausted";
        case Outcome::NoRule: return "no rule";
    }
    return "?";
}

EvalResult eval_small(const TypedTerm& m, std::size_t fuel, const EvalOptions& opts) {
    EvalResult res{Outcome::FuelExhausted, m, 0, {}};
    for (;;) {
        StepResult r = small_step(res.term, opts.dialect, opts.ctx);
        if (r.status == StepStatus::IsValue) {
            res.outcome = Outcome::Value;
            return res;
        }
        if (r.status == StepStatus::Stuck) {
            res.outcome = Outcome::Stuck;
            return res;
        }
        if (res.steps == fuel) return res;
        res.term = *r.term;
        ++res.steps;
        if (opts.trace) res.trace.push_back(std::move(r));
    }
}

EvalResult por_eval(const TypedTerm& m, std::size_t fuel) {
    EvalOptions opts;
    opts.dialect = Dialect::ParallelPcf;
    return eval_small(m, fuel, opts);
}

namespace {

class BigStep {
  public:
    BigStep(std::size_t fuel, const EvalOptions& opts) : fuel_(fuel), opts_(opts) {}

    std::pair<Outcome, TypedTerm> eval(const TypedTerm& m) {
        if (fuel_ == 0) return {Outcome::FuelExhausted, m};
        if (depth_ >= kMaxBigStepDepth) {
            depth_limited = true;
            return {Outcome::FuelExhausted, m};
        }
        --fuel_;
        ++used;
        ++depth_;
        auto r = rule(m);
        --depth_;
        if (r.first == Outcome::NoRule && !m.is(Kind::Star) && has_unit_type(m)) {
            return {Outcome::Value, TypedTerm::star()};
        }
        return r;
    }

    std::size_t used = 0;
    bool depth_limited = false;

  private:
    std::pair<Outcome, TypedTerm> rule(const TypedTerm& m) {
        switch (m.kind()) {
            case Kind::True:
            case Kind::False:
            case Kind::Zero:
            case Kind::Star:
            case Kind::Pair:
            case Kind::Abs: return {Outcome::Value, m};
            case Kind::Succ: {
                auto r = eval(m.child(0));
                if (r.first != Outcome::Value) return r;
                return {Outcome::Value, TypedTerm::succ(r.second)};
            }
            case Kind::Pred:
            case Kind::IsZero: {
                auto r = eval(m.child(0));
                if (r.first != Outcome::Value) return r;
                bool pred = m.is(Kind::Pred);
                if (r.second.is(Kind::Zero)) return {Outcome::Value, pred ? r.second : TypedTerm::true_c()};
                if (r.second.is(Kind::Succ)) {
                    return {Outcome::Value, pred ? r.second.child(0) : TypedTerm::false_c()};
                }
                return {Outcome::NoRule, m};
            }
            case Kind::App: {
                auto f = eval(m.child(0));
                if (f.first != Outcome::Value) return f;
                if (!f.second.is(Kind::Abs)) return {Outcome::NoRule, m};
                return eval(typed::subst(f.second.child(0), m.child(1), f.second.name()));
            }
            case Kind::Proj1:
            case Kind::Proj2: {
                auto p = eval(m.child(0));
                if (p.first != Outcome::Value) return p;
                if (!p.second.is(Kind::Pair)) return {Outcome::NoRule, m};
                return eval(p.second.child(m.is(Kind::Proj1) ? 0 : 1));
            }
            case Kind::If: {
                auto c = eval(m.child(0));
                if (c.first != Outcome::Value) return c;
                if (c.second.is(Kind::True)) return eval(m.child(1));
                if (c.second.is(Kind::False)) return eval(m.child(2));
                return {Outcome::NoRule, m};
            }
            case Kind::Fix: return eval(TypedTerm::app(m.child(0), m));
            case Kind::Por: return por(m);
            default: return {Outcome::NoRule, m};
        }
    }

    /// POR has no big-step rule; its arguments are interleaved by the
    /// small-step rules and the remaining fuel is charged per step.
    std::pair<Outcome, TypedTerm> por(const TypedTerm& m) {
        if (opts_.dialect != Dialect::ParallelPcf) return {Outcome::NoRule, m};
        EvalOptions sub = opts_;
        sub.trace = false;
        EvalResult r = eval_small(m, fuel_, sub);
        fuel_ -= std::min(fuel_, r.steps);
        used += r.steps;
        if (r.outcome == Outcome::Stuck) return {Outcome::NoRule, m};
        return {r.outcome, r.term};
    }

    bool has_unit_type(const TypedTerm& m) const {
        try {
            return typed::typecheck(opts_.ctx, m, opts_.dialect == Dialect::Stlc ? Dialect::Pcf : opts_.dialect)
                .is(Type::Kind::Unit);
        } catch (const typed::TypeError&) {
            return false;
        }
    }

    std::size_t fuel_;
    std::size_t depth_ = 0;
    const EvalOptions& opts_;
};

}  // namespace

EvalResult eval_big(const TypedTerm& m, std::size_t fuel, const EvalOptions& opts) {
    BigStep big(fuel, opts);
    auto [outcome, term] = big.eval(m);
    EvalResult res{outcome, term, big.used, {}};
    res.depth_limited = big.depth_limited;
    return res;
}

namespace {

struct AxStep {
    TypedTerm term;
    bool fix;
};

std::optional<AxStep> ax_root(const TypedTerm& m, bool allow_fix) {
    switch (m.kind()) {
        case Kind::App:
            if (m.child(0).is(Kind::Abs)) {
                const TypedTerm& f = m.child(0);
                return AxStep{typed::subst(f.child(0), m.child(1), f.name()), false};
            }
            return std::nullopt;
        case Kind::Proj1:
        case Kind::Proj2:
            if (m.child(0).is(Kind::Pair)) return AxStep{m.child(0).child(m.is(Kind::Proj1) ? 0 : 1), false};
            return std::nullopt;
        case Kind::Pred: {
            const TypedTerm& n = m.child(0);
            if (n.is(Kind::Zero)) return AxStep{n, false};
            if (n.is(Kind::Succ) && typed::as_numeral(n)) return AxStep{n.child(0), false};
            return std::nullopt;
        }
        case Kind::IsZero: {
            const TypedTerm& n = m.child(0);
            if (n.is(Kind::Zero)) return AxStep{TypedTerm::true_c(), false};
            if (n.is(Kind::Succ) && typed::as_numeral(n)) return AxStep{TypedTerm::false_c(), false};
            return std::nullopt;
        }
        case Kind::If:
            if (m.child(0).is(Kind::True)) return AxStep{m.child(1), false};
            if (m.child(0).is(Kind::False)) return AxStep{m.child(2), false};
            return std::nullopt;
        case Kind::Fix:
            if (allow_fix) return AxStep{TypedTerm::app(m.child(0), m), true};
            return std::nullopt;
        case Kind::Por:
            if (m.child(0).is(Kind::True) || m.child(1).is(Kind::True)) return AxStep{TypedTerm::true_c(), false};
            if (m.child(0).is(Kind::False) && m.child(1).is(Kind::False)) return AxStep{TypedTerm::false_c(), false};
            return std::nullopt;
        default: return std::nullopt;
    }
}

std::optional<AxStep> ax_any(const TypedTerm& m, bool allow_fix) {
    if (auto r = ax_root(m, allow_fix)) return r;
    for (std::size_t i = 0; i < m.arity(); ++i) {
        if (auto r = ax_any(m.child(i), allow_fix)) {
            std::vector<TypedTerm> kids = m.children();
            kids[i] = r->term;
            return AxStep{m.with_children(std::move(kids)), r->fix};
        }
    }
    return std::nullopt;
}

bool contains_fix(const TypedTerm& m) {
    if (m.is(Kind::Fix)) return true;
    for (const auto& k : m.children()) {
        if (contains_fix(k)) return true;
    }
    return false;
}

}  // namespace

std::optional<TypedTerm> ax_step(const TypedTerm& m, bool allow_fix) {
    if (auto r = ax_any(m, allow_fix)) return r->term;
    return std::nullopt;
}

AxResult ax_rewrite(const TypedTerm& m, std::size_t fuel, const AxOptions& opts) {
    AxResult res{m, 0, 0, false, false, {}, {}};
    res.sequence.push_back(m);
    res.y_counts.push_back(0);
    for (;;) {
        auto r = ax_any(res.term, res.y_unfolds < opts.y_bound);
        if (!r) break;
        if (res.steps == fuel) {
            res.exhausted = true;
            return res;
        }
        res.term = r->term;
        ++res.steps;
        if (r->fix) ++res.y_unfolds;
        res.sequence.push_back(res.term);
        res.y_counts.push_back(res.y_unfolds);
    }
    res.y_bound_hit = res.y_unfolds >= opts.y_bound && contains_fix(res.term);
    return res;
}

bool ax_joinable(const TypedTerm& m, const TypedTerm& n, std::size_t fuel, const AxOptions& opts) {
    std::set<std::string> seen;
    for (const auto& t : ax_rewrite(m, fuel, opts).sequence) {
        seen.insert(typed::canonical_key(t));
    }
    for (const auto& t : ax_rewrite(n, fuel, opts).sequence) {
        if (seen.count(typed::canonical_key(t))) return true;
    }
    return false;
}

TypedTerm omega(const Type& a) { return TypedTerm::fix(TypedTerm::abs("x", a, TypedTerm::var("x"))); }

TypedTerm por_test_term() {
    const TypedTerm x = TypedTerm::var("x");
    const TypedTerm t = TypedTerm::true_c();
    const TypedTerm f = TypedTerm::false_c();
    const TypedTerm w = omega(Type::boolean());
    TypedTerm inner = TypedTerm::if_then_else(typed::apply(x, {f, f}), w, t);
    TypedTerm middle = TypedTerm::if_then_else(typed::apply(x, {w, t}), inner, w);
    TypedTerm outer = TypedTerm::if_then_else(typed::apply(x, {t, w}), middle, w);
    Type b = Type::boolean();
    return TypedTerm::abs("x", Type::arrow(b, Type::arrow(b, b)), outer);
}

TypedTerm por_function() {
    Type b = Type::boolean();
    return TypedTerm::abs("a", b, TypedTerm::abs("b", b, TypedTerm::por(TypedTerm::var("a"), TypedTerm::var("b"))));
}

}  // namespace lcw::pcf

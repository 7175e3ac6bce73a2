#include "lcw/pcfdenot.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "lcw/names.hpp"

namespace lcw::pcfdenot {

using typed::Derivation;
using typed::Kind;

DomValue DomValue::of_bool(bool b) {
    DomValue v;
    v.kind = Kind::Bool;
    v.boolean = b;
    return v;
}

DomValue DomValue::of_nat(unsigned long n) {
    DomValue v;
    v.kind = Kind::Nat;
    v.nat = n;
    return v;
}

DomValue DomValue::unit() {
    DomValue v;
    v.kind = Kind::Unit;
    return v;
}

DomValue DomValue::pair(Thunk l, Thunk r) {
    DomValue v;
    v.kind = Kind::Pair;
    v.left = std::make_shared<const Thunk>(std::move(l));
    v.right = std::make_shared<const Thunk>(std::move(r));
    return v;
}

DomValue DomValue::function(std::function<DomValue(Thunk)> f) {
    DomValue v;
    v.kind = Kind::Fun;
    v.fn = std::make_shared<const std::function<DomValue(Thunk)>>(std::move(f));
    return v;
}

bool ground_equal(const DomValue& a, const DomValue& b) {
    if (!a.is_ground() || !b.is_ground()) throw UsageError("ground_equal: pairs and functions are not compared");
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case DomValue::Kind::Bool: return a.boolean == b.boolean;
        case DomValue::Kind::Nat: return a.nat == b.nat;
        default: return true;
    }
}

bool flat_leq(const DomValue& a, const DomValue& b) { return a.is_bottom() || ground_equal(a, b); }

std::string to_string(const DomValue& v) {
    switch (v.kind) {
        case DomValue::Kind::Bottom: return "⊥";
        case DomValue::Kind::Bool: return v.boolean ? "T" : "F";
        case DomValue::Kind::Nat: return std::to_string(v.nat);
        case DomValue::Kind::Unit: return "*";
        case DomValue::Kind::Pair: return "<pair>";
        case DomValue::Kind::Fun: return "<function>";
    }
    return "?";
}

DomValue of_result(const TypedTerm& v) {
    if (v.is(Kind::True)) return DomValue::of_bool(true);
    if (v.is(Kind::False)) return DomValue::of_bool(false);
    if (auto n = typed::as_numeral(v)) return DomValue::of_nat(*n);
    throw UsageError("of_result: not a result");
}

namespace {

struct EnvNode {
    std::string name;
    Thunk value;
    std::shared_ptr<const EnvNode> next;
};
using EnvPtr = std::shared_ptr<const EnvNode>;

EnvPtr extend(EnvPtr env, std::string name, Thunk value) {
    return std::make_shared<const EnvNode>(EnvNode{std::move(name), std::move(value), std::move(env)});
}

struct State {
    std::size_t fuel;
    std::size_t unfoldings = 0;
    bool starved = false;
    std::size_t depth = 0;
    bool depth_limited = false;
    std::shared_ptr<const Derivation> root;
};

struct DepthGuard {
    State& st;
    explicit DepthGuard(State& s) : st(s) { ++st.depth; }
    ~DepthGuard() { --st.depth; }
};
using StatePtr = std::shared_ptr<State>;

DomValue eval(const Derivation& d, const EnvPtr& env, const StatePtr& st);

Thunk delay(const Derivation& d, EnvPtr env, StatePtr st) {
    const Derivation* node = &d;
    return [node, env = std::move(env), st = std::move(st)] { return eval(*node, env, st); };
}

DomValue eval(const Derivation& d, const EnvPtr& env, const StatePtr& st) {
    if (d.type.is(Type::Kind::Unit)) return DomValue::unit();
    DepthGuard guard(*st);
    if (st->depth > kMaxDenotDepth) {
        st->depth_limited = true;
        return DomValue::bottom();
    }
    const TypedTerm& m = d.term;
    auto sub = [&](std::size_t i) { return eval(d.premises.at(i), env, st); };
    switch (m.kind()) {
        case Kind::Var:
            for (const EnvNode* e = env.get(); e; e = e->next.get()) {
                if (e->name == m.name()) return e->value();
            }
            throw UsageError("denote: unbound variable '" + m.name() + "'");
        case Kind::Abs: {
            const Derivation* body = &d.premises.at(0);
            std::string x = m.name();
            return DomValue::function(
                [body, x, env, st](Thunk arg) { return eval(*body, extend(env, x, std::move(arg)), st); });
        }
        case Kind::App: {
            DomValue f = sub(0);
            if (f.is_bottom()) return f;
            return (*f.fn)(delay(d.premises.at(1), env, st));
        }
        case Kind::Pair: return DomValue::pair(delay(d.premises.at(0), env, st), delay(d.premises.at(1), env, st));
        case Kind::Proj1:
        case Kind::Proj2: {
            DomValue p = sub(0);
            if (p.is_bottom()) return p;
            return m.is(Kind::Proj1) ? (*p.left)() : (*p.right)();
        }
        case Kind::True: return DomValue::of_bool(true);
        case Kind::False: return DomValue::of_bool(false);
        case Kind::Zero: return DomValue::of_nat(0);
        case Kind::Succ: {
            DomValue n = sub(0);
            if (n.is_bottom()) return n;
            return DomValue::of_nat(n.nat + 1);
        }
        case Kind::Pred: {
            DomValue n = sub(0);
            if (n.is_bottom()) return n;
            return DomValue::of_nat(n.nat == 0 ? 0 : n.nat - 1);
        }
        case Kind::IsZero: {
            DomValue n = sub(0);
            if (n.is_bottom()) return n;
            return DomValue::of_bool(n.nat == 0);
        }
        case Kind::If: {
            DomValue c = sub(0);
            if (c.is_bottom()) return c;
            return c.boolean ? sub(1) : sub(2);
        }
        case Kind::Fix: {
            if (st->fuel == 0) {
                st->starved = true;
                return DomValue::bottom();
            }
            --st->fuel;
            ++st->unfoldings;
            DomValue f = sub(0);
            if (f.is_bottom()) return f;
            return (*f.fn)(delay(d, env, st));
        }
        case Kind::Por: {
            std::size_t start = st->fuel;
            DomValue l = sub(0);
            if (!l.is_bottom() && l.boolean) return l;
            std::size_t after_left = st->fuel;
            st->fuel = start;
            DomValue r = sub(1);
            st->fuel = std::min(after_left, st->fuel);
            if (!r.is_bottom() && r.boolean) return r;
            if (!l.is_bottom() && !r.is_bottom()) return DomValue::of_bool(false);
            return DomValue::bottom();
        }
        default: throw UsageError("denote: constructor outside PCF");
    }
}

}  // namespace

Denotation denote_counted(const Context& ctx, const TypedTerm& m, const Env& env, std::size_t fuel,
                          Dialect dialect) {
    pcf::pcf_typecheck(ctx, m, dialect);
    if (dialect == Dialect::Stlc) dialect = Dialect::Pcf;
    auto st = std::make_shared<State>();
    st->fuel = fuel;
    st->root = std::make_shared<const Derivation>(typed::derive(ctx, m, dialect));
    EnvPtr e;
    for (const auto& [x, a] : ctx) {
        auto it = env.find(x);
        if (it == env.end()) throw UsageError("denote: no value for '" + x + "'");
        DomValue v = it->second;
        e = extend(e, x, [v] { return v; });
    }
    DomValue v = eval(*st->root, e, st);
    return {v, st->unfoldings, st->starved, st->depth_limited};
}

DomValue denote(const Context& ctx, const TypedTerm& m, const Env& env, std::size_t fuel, Dialect dialect) {
    return denote_counted(ctx, m, env, fuel, dialect).value;
}

DomValue denote(const TypedTerm& m, std::size_t fuel, Dialect dialect) { return denote({}, m, {}, fuel, dialect); }

namespace {

Type ground_type_of(const TypedTerm& m, const char* who) {
    Type a = pcf::pcf_typecheck({}, m);
    if (a != Type::boolean() && a != Type::nat()) {
        throw UsageError(std::string(who) + ": expected a closed term of type bool or nat");
    }
    return a;
}

}  // namespace

AdequacyVerdict adequacy_check(const TypedTerm& m, std::size_t fuel_op, std::size_t fuel_den) {
    ground_type_of(m, "adequacy_check");
    AdequacyVerdict v{pcf::eval_small(m, fuel_op), {}, 0, std::nullopt, true};
    Denotation d = denote_counted({}, m, {}, fuel_den);
    v.denotation = d.value;
    v.unfoldings = d.unfoldings;
    if (v.operational.outcome == pcf::Outcome::Stuck) {
        v.consistent = false;
        return v;
    }
    if (!v.operational.ok()) return v;
    DomValue expected = of_result(v.operational.term);
    v.consistent = ground_equal(d.value, expected);
    if (!v.consistent) return v;
    std::size_t u = d.unfoldings;
    if (ground_equal(denote(m, u), expected) && (u == 0 || denote(m, u - 1).is_bottom())) {
        v.threshold = u;
        return v;
    }
    for (std::size_t f = 0; f <= fuel_den; ++f) {
        if (ground_equal(denote(m, f), expected)) {
            v.threshold = f;
            break;
        }
    }
    return v;
}

SoundnessSpot soundness_spot(const TypedTerm& m, const TypedTerm& n, std::size_t rewrite_fuel,
                             const std::vector<std::size_t>& fuels, const pcf::AxOptions& opts) {
    if (ground_type_of(m, "soundness_spot") != ground_type_of(n, "soundness_spot")) {
        throw UsageError("soundness_spot: the terms have different types");
    }
    SoundnessSpot spot;
    pcf::AxResult rm = pcf::ax_rewrite(m, rewrite_fuel, opts);
    pcf::AxResult rn = pcf::ax_rewrite(n, rewrite_fuel, opts);
    std::map<std::string, std::size_t> first;
    for (std::size_t i = 0; i < rm.sequence.size(); ++i) {
        first.emplace(typed::canonical_key(rm.sequence[i]), i);
    }
    for (std::size_t j = 0; j < rn.sequence.size() && !spot.joined; ++j) {
        auto it = first.find(typed::canonical_key(rn.sequence[j]));
        if (it == first.end()) continue;
        spot.joined = true;
        spot.offset = static_cast<long>(rm.y_counts[it->second]) - static_cast<long>(rn.y_counts[j]);
    }
    spot.equal = spot.joined;
    for (std::size_t f : fuels) {
        std::size_t fm = f + static_cast<std::size_t>(std::max(0L, spot.offset));
        std::size_t fn = f + static_cast<std::size_t>(std::max(0L, -spot.offset));
        SoundnessSpot::Sample s{fm, fn, denote(m, fm), denote(n, fn)};
        if (!ground_equal(s.m, s.n)) spot.equal = false;
        spot.samples.push_back(std::move(s));
    }
    return spot;
}

FinitePoset::FinitePoset(std::vector<std::string> labels, std::vector<std::vector<bool>> leq)
    : labels_(std::move(labels)), leq_(std::move(leq)) {
    const std::size_t n = labels_.size();
    if (leq_.size() != n) throw UsageError("FinitePoset: relation matrix has the wrong size");
    for (const auto& row : leq_) {
        if (row.size() != n) throw UsageError("FinitePoset: relation matrix has the wrong size");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!leq_[i][i]) throw UsageError("FinitePoset: not reflexive at " + labels_[i]);
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && leq_[i][j] && leq_[j][i]) {
                throw UsageError("FinitePoset: not antisymmetric at " + labels_[i] + ", " + labels_[j]);
            }
            for (std::size_t k = 0; k < n; ++k) {
                if (leq_[i][j] && leq_[j][k] && !leq_[i][k]) {
                    throw UsageError("FinitePoset: not transitive at " + labels_[i] + ", " + labels_[j] + ", " +
                                     labels_[k]);
                }
            }
        }
    }
}

FinitePoset FinitePoset::flat(const std::vector<std::string>& values) {
    std::vector<std::string> labels{"⊥"};
    labels.insert(labels.end(), values.begin(), values.end());
    std::vector<std::vector<bool>> leq(labels.size(), std::vector<bool>(labels.size(), false));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        leq[0][i] = true;
        leq[i][i] = true;
    }
    return FinitePoset(std::move(labels), std::move(leq));
}

FinitePoset FinitePoset::point() { return FinitePoset({"*"}, {{true}}); }

FinitePoset FinitePoset::lifted_bool() { return flat({"T", "F"}); }

std::optional<std::size_t> FinitePoset::bottom() const {
    for (std::size_t i = 0; i < size(); ++i) {
        bool least = true;
        for (std::size_t j = 0; j < size() && least; ++j) {
            least = leq_[i][j];
        }
        if (least) return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> FinitePoset::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

bool is_monotone(const FinitePoset& p, const FinitePoset& q, const MonotoneMap& f) {
    if (f.size() != p.size()) return false;
    for (std::size_t x : f) {
        if (x >= q.size()) return false;
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (p.leq(i, j) && !q.leq(f[i], f[j])) return false;
        }
    }
    return true;
}

namespace {

void extend_maps(const FinitePoset& p, const FinitePoset& q, MonotoneMap& f, std::vector<MonotoneMap>& out) {
    const std::size_t i = f.size();
    if (i == p.size()) {
        out.push_back(f);
        return;
    }
    for (std::size_t y = 0; y < q.size(); ++y) {
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j) {
            if (p.leq(j, i) && !q.leq(f[j], y)) ok = false;
            if (p.leq(i, j) && !q.leq(y, f[j])) ok = false;
        }
        if (!ok) continue;
        f.push_back(y);
        extend_maps(p, q, f, out);
        f.pop_back();
    }
}

}  // namespace

std::vector<MonotoneMap> monotone_maps(const FinitePoset& p, const FinitePoset& q) {
    if (p.size() > 6) throw UsageError("monotone_maps: the domain has more than 6 elements");
    if (std::pow(static_cast<double>(q.size()), static_cast<double>(p.size())) > 1e7) {
        throw UsageError("monotone_maps: too many candidate tables");
    }
    std::vector<MonotoneMap> out;
    MonotoneMap f;
    extend_maps(p, q, f, out);
    return out;
}

std::string to_string(const FinitePoset& p, const MonotoneMap& f, const FinitePoset& q) {
    std::string s = "[";
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) s += ", ";
        s += p.label(i) + "↦" + q.label(f[i]);
    }
    return s + "]";
}

FinitePoset function_poset(const FinitePoset& p, const FinitePoset& q) {
    std::vector<MonotoneMap> maps = monotone_maps(p, q);
    std::vector<std::string> labels;
    std::vector<std::vector<bool>> leq(maps.size(), std::vector<bool>(maps.size(), true));
    for (std::size_t a = 0; a < maps.size(); ++a) {
        labels.push_back(to_string(p, maps[a], q));
        for (std::size_t b = 0; b < maps.size(); ++b) {
            for (std::size_t i = 0; i < p.size(); ++i) {
                if (!q.leq(maps[a][i], maps[b][i])) {
                    leq[a][b] = false;
                    break;
                }
            }
        }
    }
    return FinitePoset(std::move(labels), std::move(leq));
}

std::vector<std::size_t> fixed_points(const FinitePoset& p, const MonotoneMap& f) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < p.size() && i < f.size(); ++i) {
        if (f[i] == i) out.push_back(i);
    }
    return out;
}

std::size_t least_fixed_point(const FinitePoset& p, const MonotoneMap& f) {
    if (!is_monotone(p, p, f)) throw UsageError("least_fixed_point: not a monotone endomap");
    auto bot = p.bottom();
    if (!bot) throw UsageError("least_fixed_point: the poset has no least element");
    std::size_t x = *bot;
    for (std::size_t i = 0; f[x] != x; ++i) {
        if (i > p.size()) throw std::logic_error("least_fixed_point: iteration did not stabilize");
        x = f[x];
    }
    for (std::size_t y : fixed_points(p, f)) {
        if (!p.leq(x, y)) throw std::logic_error("least_fixed_point: result is not least");
    }
    return x;
}

}  // namespace lcw::pcfdenot

#include "lcw/models.hpp"

#include "lcw/names.hpp"
#include "lcw/stlc.hpp"

namespace lcw::models {

using TK = Type::Kind;

std::size_t BaseAssignment::size_of(const std::string& base) const {
    auto it = sizes.find(base);
    std::size_t k = it == sizes.end() ? uniform : it->second;
    if (k == 0) {
        throw UsageError("no size assigned to base type '" + base + "'");
    }
    return k;
}

std::string to_string(const SemValue& v) {
    switch (v.kind) {
        case SemValue::Kind::Atom: return std::to_string(v.atom);
        case SemValue::Kind::UnitPoint: return "*";
        case SemValue::Kind::Tuple:
            return "(" + to_string(v.parts[0]) + ", " + to_string(v.parts[1]) + ")";
        case SemValue::Kind::Table: {
            std::string out = "[";
            for (std::size_t i = 0; i < v.parts.size(); ++i) {
                if (i) out += " ";
                out += to_string(v.parts[i]);
            }
            return out + "]";
        }
    }
    return "";
}

Domain::Domain(const Type& a, const BaseAssignment& base, std::size_t bound) : type_(a) {
    auto overflow = [&] {
        throw ModelOverflow("the set for " + types::to_string(a) + " has more than " +
                            std::to_string(bound) + " elements");
    };
    switch (a.kind()) {
        case TK::Base:
            size_ = base.size_of(a.name());
            break;
        case TK::Unit:
            size_ = 1;
            break;
        case TK::Product:
            left_ = std::make_shared<Domain>(a.left(), base, bound);
            right_ = std::make_shared<Domain>(a.right(), base, bound);
            if (left_->size_ > bound / right_->size_) overflow();
            size_ = left_->size_ * right_->size_;
            break;
        case TK::Arrow: {
            left_ = std::make_shared<Domain>(a.left(), base, bound);
            right_ = std::make_shared<Domain>(a.right(), base, bound);
            std::size_t cod = right_->size_;
            if (cod == 1) {
                size_ = 1;
                break;
            }
            for (std::size_t i = 0; i < left_->size_; ++i) {
                powers_.push_back(size_);
                if (size_ > bound / cod) overflow();
                size_ *= cod;
            }
            break;
        }
        case TK::Var:
            throw UsageError("template variable '" + a.name() + "' has no set-theoretic meaning");
        default:
            throw UsageError("sum and empty types are outside the finite model");
    }
    if (size_ > bound) overflow();
}

SemValue Domain::value(std::size_t i) const {
    SemValue v;
    switch (type_.kind()) {
        case TK::Base:
            v.kind = SemValue::Kind::Atom;
            v.atom = i;
            break;
        case TK::Product:
            v.kind = SemValue::Kind::Tuple;
            v.parts = {left_->value(i / right_->size_), right_->value(i % right_->size_)};
            break;
        case TK::Arrow:
            v.kind = SemValue::Kind::Table;
            for (std::size_t a = 0; a < left_->size_; ++a) {
                std::size_t out = right_->size_ == 1 ? 0 : i / powers_[a] % right_->size_;
                v.parts.push_back(right_->value(out));
            }
            break;
        default:
            break;
    }
    return v;
}

std::size_t Domain::index(const SemValue& v) const {
    switch (type_.kind()) {
        case TK::Base: return v.atom;
        case TK::Product: return left_->index(v.parts[0]) * right_->size_ + right_->index(v.parts[1]);
        case TK::Arrow: {
            if (right_->size_ == 1) return 0;
            std::size_t out = 0;
            for (std::size_t i = 0; i < v.parts.size(); ++i) out += right_->index(v.parts[i]) * powers_[i];
            return out;
        }
        default: return 0;
    }
}

std::vector<SemValue> interp_type(const Type& a, const BaseAssignment& base, std::size_t bound) {
    Domain d(a, base, bound);
    std::vector<SemValue> out;
    out.reserve(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) out.push_back(d.value(i));
    return out;
}

std::size_t TermTable::env_index(const std::vector<std::size_t>& env) const {
    std::size_t i = 0;
    for (std::size_t k = 0; k < env_sizes.size(); ++k) i = i * env_sizes[k] + env[k];
    return i;
}

std::vector<std::size_t> TermTable::env_at(std::size_t i) const {
    std::vector<std::size_t> env(env_sizes.size());
    for (std::size_t k = env_sizes.size(); k-- > 0;) {
        env[k] = i % env_sizes[k];
        i /= env_sizes[k];
    }
    return env;
}

namespace {

class Evaluator {
  public:
    Evaluator(const BaseAssignment& base, std::size_t bound) : base_(base), bound_(bound) {}

    const Domain& domain(const Type& a) {
        auto key = types::type_key(a);
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            it = cache_.emplace(key, std::make_unique<Domain>(a, base_, bound_)).first;
        }
        return *it->second;
    }

    // Scope entries are looked up from the end, matching context shadowing.
    SemValue eval(const typed::Derivation& d, std::vector<std::pair<std::string, SemValue>>& scope) {
        const std::string& r = d.rule;
        if (r == "var") {
            for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
                if (it->first == d.term.name()) return it->second;
            }
            throw UsageError("unbound variable '" + d.term.name() + "'");
        }
        if (r == "star") return SemValue{};
        if (r == "app") {
            SemValue f = eval(d.premises[0], scope);
            SemValue a = eval(d.premises[1], scope);
            return f.parts[domain(d.premises[1].type).index(a)];
        }
        if (r == "abs") {
            const Domain& dom = domain(d.type.dom());
            SemValue out{SemValue::Kind::Table, 0, {}};
            out.parts.reserve(dom.size());
            for (std::size_t a = 0; a < dom.size(); ++a) {
                scope.emplace_back(d.term.name(), dom.value(a));
                out.parts.push_back(eval(d.premises[0], scope));
                scope.pop_back();
            }
            return out;
        }
        if (r == "pair") {
            return SemValue{SemValue::Kind::Tuple, 0, {eval(d.premises[0], scope), eval(d.premises[1], scope)}};
        }
        if (r == "pi1") return eval(d.premises[0], scope).parts[0];
        if (r == "pi2") return eval(d.premises[0], scope).parts[1];
        throw UsageError("rule '" + r + "' is outside the finite set-theoretic model");
    }

  private:
    const BaseAssignment& base_;
    std::size_t bound_;
    std::map<std::string, std::unique_ptr<Domain>> cache_;
};

}  // namespace

TermTable interp_term(const Context& ctx, const TypedTerm& m, const Type& a, const BaseAssignment& base,
                      std::size_t bound) {
    typed::Derivation d = typed::derive(ctx, m);
    if (!(d.type == a)) {
        throw typed::TypeError("term has type " + types::to_string(d.type) + ", not " + types::to_string(a),
                               {}, d.rule);
    }
    Evaluator ev(base, bound);
    TermTable t{ctx, a, {}, {}};
    std::size_t envs = 1;
    for (const auto& e : ctx) {
        std::size_t k = ev.domain(e.second).size();
        if (envs > bound / k) {
            throw ModelOverflow("more than " + std::to_string(bound) + " environments");
        }
        envs *= k;
        t.env_sizes.push_back(k);
    }
    t.entries.reserve(envs);
    for (std::size_t i = 0; i < envs; ++i) {
        auto env = t.env_at(i);
        std::vector<std::pair<std::string, SemValue>> scope;
        for (std::size_t k = 0; k < ctx.size(); ++k) {
            scope.emplace_back(ctx[k].first, ev.domain(ctx[k].second).value(env[k]));
        }
        t.entries.push_back(ev.eval(d, scope));
    }
    return t;
}

SoundnessCheck check_soundness(const TypedTerm& m, const TypedTerm& n, const Context& ctx, const Type& a,
                               const BaseAssignment& base, std::size_t fuel) {
    SoundnessCheck out{interp_term(ctx, m, a, base) == interp_term(ctx, n, a, base), std::nullopt};
    auto nm = stlc::normalize_typed(ctx, m, stlc::Mode::BetaEta, fuel);
    auto nn = stlc::normalize_typed(ctx, n, stlc::Mode::BetaEta, fuel);
    if (!nm.exhausted && !nn.exhausted) {
        out.convertible = typed::alpha_eq(nm.term, nn.term);
    }
    return out;
}

std::optional<BaseAssignment> separate(const TypedTerm& m, const TypedTerm& n, const Context& ctx,
                                       const Type& a, std::size_t max_base, std::size_t bound) {
    for (std::size_t k = 1; k <= max_base; ++k) {
        auto base = BaseAssignment::all(k);
        if (interp_term(ctx, m, a, base, bound) != interp_term(ctx, n, a, base, bound)) {
            return base;
        }
    }
    return std::nullopt;
}

TypedTerm typed_numeral(std::size_t n, const Type& a) {
    TypedTerm body = TypedTerm::var("x");
    for (std::size_t i = 0; i < n; ++i) body = TypedTerm::app(TypedTerm::var("f"), body);
    return TypedTerm::abs("f", Type::arrow(a, a), TypedTerm::abs("x", a, body));
}

}  // namespace lcw::models

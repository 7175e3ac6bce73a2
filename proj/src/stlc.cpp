#include "lcw/stlc.hpp"

#include <map>

#include "json.hpp"
#include "lcw/names.hpp"
#include "lcw/syntax.hpp"

namespace lcw::stlc {

using typed::Kind;

Type typecheck(const Context& ctx, const TypedTerm& m) {
    return typed::typecheck(ctx, m, typed::Dialect::Stlc);
}

Derivation derivation(const Context& ctx, const TypedTerm& m) {
    return typed::derive(ctx, m, typed::Dialect::Stlc);
}

std::string nd_label(const std::string& rule) {
    static const std::map<std::string, std::string> labels{
        {"var", "(ax)"},     {"abs", "(→-I)"},   {"app", "(→-E)"},   {"pair", "(∧-I)"},
        {"pi1", "(∧-E1)"},   {"pi2", "(∧-E2)"},  {"star", "(⊤-I)"},  {"in1", "(∨-I1)"},
        {"in2", "(∨-I2)"},   {"case", "(∨-E)"},  {"abort", "(⊥-E)"},
    };
    auto it = labels.find(rule);
    return it == labels.end() ? "(" + rule + ")" : it->second;
}

std::size_t node_count(const Derivation& d) {
    std::size_t n = 1;
    for (const auto& p : d.premises) {
        n += node_count(p);
    }
    return n;
}

TypedTerm rebuild_term(const Derivation& d) {
    std::vector<TypedTerm> kids;
    for (const auto& p : d.premises) {
        kids.push_back(rebuild_term(p));
    }
    if (kids.size() != d.term.arity()) {
        throw UsageError("rebuild_term: premise count does not match rule " + d.rule);
    }
    return d.term.with_children(std::move(kids));
}

namespace {

std::string judgment(const Derivation& d, bool unicode) {
    auto style = unicode ? syntax::PrintStyle::Unicode : syntax::PrintStyle::Ascii;
    std::string ctx = syntax::print(d.ctx, style);
    return (ctx.empty() ? "" : ctx + " ") + (unicode ? "⊢ " : "|- ") + syntax::print(d.term, style) +
           " : " + syntax::print(d.type, style);
}

void render(const Derivation& d, bool unicode, int depth, std::string& out) {
    out += std::string(static_cast<std::size_t>(depth) * 2, ' ');
    out += judgment(d, unicode) + "   " + nd_label(d.rule) + "\n";
    for (const auto& p : d.premises) {
        render(p, unicode, depth + 1, out);
    }
}

nlohmann::json to_json(const Derivation& d) {
    nlohmann::json j;
    j["rule"] = d.rule;
    j["label"] = nd_label(d.rule);
    j["judgment"] = judgment(d, false);
    j["premises"] = nlohmann::json::array();
    for (const auto& p : d.premises) {
        j["premises"].push_back(to_json(p));
    }
    return j;
}

}  // namespace

std::string render_text(const Derivation& d, bool unicode) {
    std::string out;
    render(d, unicode, 0, out);
    return out;
}

std::string render_json(const Derivation& d, int indent) { return to_json(d).dump(indent); }

namespace {

struct Stepper {
    const StepOptions& opts;
    std::vector<TypedReduct>& out;

    void root(Context& ctx, const TypedTerm& m, const Path& path) {
        switch (m.kind()) {
            case Kind::App:
                if (m.child(0).is(Kind::Abs)) {
                    const TypedTerm& f = m.child(0);
                    out.push_back({typed::subst(f.child(0), m.child(1), f.name()), path, "beta"});
                }
                break;
            case Kind::Proj1:
            case Kind::Proj2:
                if (m.child(0).is(Kind::Pair)) {
                    bool first = m.is(Kind::Proj1);
                    out.push_back({m.child(0).child(first ? 0 : 1), path, first ? "beta-pi1" : "beta-pi2"});
                }
                break;
            case Kind::Case: {
                const TypedTerm& s = m.child(0);
                if (s.is(Kind::In1)) {
                    out.push_back({typed::subst(m.child(1), s.child(0), m.name()), path, "beta-case1"});
                } else if (s.is(Kind::In2)) {
                    out.push_back({typed::subst(m.child(2), s.child(0), m.name2()), path, "beta-case2"});
                }
                break;
            }
            default:
                break;
        }
        if (opts.eta) {
            if (m.is(Kind::Abs) && m.child(0).is(Kind::App)) {
                const TypedTerm& body = m.child(0);
                if (body.child(1).is(Kind::Var) && body.child(1).name() == m.name() &&
                    !typed::is_free_in(m.name(), body.child(0))) {
                    out.push_back({body.child(0), path, "eta"});
                }
            }
            if (m.is(Kind::Pair) && m.child(0).is(Kind::Proj1) && m.child(1).is(Kind::Proj2) &&
                typed::alpha_eq(m.child(0).child(0), m.child(1).child(0))) {
                out.push_back({m.child(0).child(0), path, "eta-pair"});
            }
        }
        if (opts.eta_unit && !m.is(Kind::Star)) {
            try {
                if (typed::typecheck(ctx, m).is(Type::Kind::Unit)) {
                    out.push_back({TypedTerm::star(), path, "eta-unit"});
                }
            } catch (const typed::TypeError&) {
            }
        }
    }

    void walk(Context& ctx, const TypedTerm& m, Path& path,
              const std::function<TypedTerm(const TypedTerm&)>& wrap) {
        std::size_t before = out.size();
        root(ctx, m, path);
        for (std::size_t i = before; i < out.size(); ++i) {
            out[i].term = wrap(out[i].term);
        }
        std::optional<Type> scrut;
        if (m.is(Kind::Case)) {
            try {
                scrut = typed::typecheck(ctx, m.child(0));
            } catch (const typed::TypeError&) {
            }
        }
        for (std::size_t i = 0; i < m.arity(); ++i) {
            const std::string* b = m.binder_for(i);
            bool pushed = false;
            if (b) {
                std::optional<Type> t;
                if (m.is(Kind::Abs)) {
                    t = m.annot();
                } else if (scrut && scrut->is_sum()) {
                    t = i == 1 ? scrut->left() : scrut->right();
                }
                if (t) {
                    ctx.emplace_back(*b, *t);
                    pushed = true;
                }
            }
            path.push_back(static_cast<int>(i));
            walk(ctx, m.child(i), path, [&](const TypedTerm& t) {
                std::vector<TypedTerm> kids = m.children();
                kids[i] = t;
                return wrap(m.with_children(std::move(kids)));
            });
            path.pop_back();
            if (pushed) ctx.pop_back();
        }
    }
};

}  // namespace

std::vector<TypedReduct> step_typed(const Context& ctx, const TypedTerm& m, const StepOptions& opts) {
    std::vector<TypedReduct> out;
    Context c = ctx;
    Path path;
    Stepper{opts, out}.walk(c, m, path, [](const TypedTerm& t) { return t; });
    return out;
}

TypedNormalizeResult normalize_typed(const Context& ctx, const TypedTerm& m, Mode mode,
                                     std::size_t fuel, bool eta_unit) {
    if (fuel == 0) {
        throw UsageError("normalize_typed: fuel must be at least 1");
    }
    TypedTerm current = m;
    std::size_t steps = 0;
    StepOptions beta_only;
    StepOptions eta_too{mode == Mode::BetaEta, eta_unit};
    while (true) {
        auto rs = step_typed(ctx, current, beta_only);
        if (rs.empty() && (eta_too.eta || eta_too.eta_unit)) {
            rs = step_typed(ctx, current, eta_too);
        }
        if (rs.empty()) {
            return {current, steps, false};
        }
        if (steps == fuel) {
            return {current, steps, true};
        }
        current = rs.front().term;
        ++steps;
    }
}

TypedGraph typed_reduction_graph(const Context& ctx, const TypedTerm& m, const StepOptions& opts,
                                 std::size_t max_vertices, std::size_t max_depth) {
    if (max_vertices == 0 || max_depth == 0) {
        throw UsageError("typed_reduction_graph: budgets must be at least 1");
    }
    return explore_reductions(
        m,
        [&](const TypedTerm& t) {
            std::vector<std::pair<TypedTerm, Path>> out;
            for (auto& r : step_typed(ctx, t, opts)) {
                out.emplace_back(std::move(r.term), std::move(r.position));
            }
            return out;
        },
        [](const TypedTerm& t) { return typed::canonical_key(t); }, max_vertices, max_depth);
}

}  // namespace lcw::stlc

#include "lcw/untyped.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "lcw/names.hpp"

namespace lcw::untyped {

Term Term::var(std::string name) {
    return Term(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}, 1}));
}

Term Term::app(Term fun, Term arg) {
    std::size_t size = 1 + fun.size() + arg.size();
    return Term(std::make_shared<const Node>(
        Node{Kind::App, {}, {std::move(fun), std::move(arg)}, size}));
}

Term Term::abs(std::string binder, Term body) {
    std::size_t size = 1 + body.size();
    return Term(
        std::make_shared<const Node>(Node{Kind::Abs, std::move(binder), {std::move(body)}, size}));
}

Term apply(Term f, std::initializer_list<Term> args) {
    for (const auto& a : args) {
        f = Term::app(std::move(f), a);
    }
    return f;
}

Term lambda(std::initializer_list<std::string> binders, Term body) {
    std::vector<std::string> names(binders);
    for (auto it = names.rbegin(); it != names.rend(); ++it) {
        body = Term::abs(*it, std::move(body));
    }
    return body;
}

namespace {

void collect_free(const Term& m, std::vector<std::string>& bound, std::set<std::string>& out) {
    switch (m.kind()) {
        case Term::Kind::Var:
            if (std::find(bound.begin(), bound.end(), m.name()) == bound.end()) {
                out.insert(m.name());
            }
            break;
        case Term::Kind::App:
            collect_free(m.fun(), bound, out);
            collect_free(m.arg(), bound, out);
            break;
        case Term::Kind::Abs:
            bound.push_back(m.name());
            collect_free(m.body(), bound, out);
            bound.pop_back();
            break;
    }
}

void collect_names(const Term& m, std::set<std::string>& out) {
    switch (m.kind()) {
        case Term::Kind::Var:
            out.insert(m.name());
            break;
        case Term::Kind::App:
            collect_names(m.fun(), out);
            collect_names(m.arg(), out);
            break;
        case Term::Kind::Abs:
            out.insert(m.name());
            collect_names(m.body(), out);
            break;
    }
}

bool is_free_in(const Term& m, const std::string& x) {
    switch (m.kind()) {
        case Term::Kind::Var:
            return m.name() == x;
        case Term::Kind::App:
            return is_free_in(m.fun(), x) || is_free_in(m.arg(), x);
        case Term::Kind::Abs:
            return m.name() != x && is_free_in(m.body(), x);
    }
    return false;
}

Term rename_unchecked(const Term& m, const std::string& y, const std::string& x) {
    switch (m.kind()) {
        case Term::Kind::Var:
            return m.name() == x ? Term::var(y) : m;
        case Term::Kind::App:
            return Term::app(rename_unchecked(m.fun(), y, x), rename_unchecked(m.arg(), y, x));
        case Term::Kind::Abs:
            return Term::abs(m.name() == x ? y : m.name(), rename_unchecked(m.body(), y, x));
    }
    return m;
}

void write_key(const Term& m, std::vector<std::string>& bound, std::string& out) {
    switch (m.kind()) {
        case Term::Kind::Var: {
            for (std::size_t i = bound.size(); i-- > 0;) {
                if (bound[i] == m.name()) {
                    out += '#';
                    out += std::to_string(bound.size() - 1 - i);
                    out += ';';
                    return;
                }
            }
            out += '$';
            out += m.name();
            out += ';';
            break;
        }
        case Term::Kind::App:
            out += '@';
            write_key(m.fun(), bound, out);
            write_key(m.arg(), bound, out);
            break;
        case Term::Kind::Abs:
            out += '\\';
            bound.push_back(m.name());
            write_key(m.body(), bound, out);
            bound.pop_back();
            break;
    }
}

struct Substituter {
    const Term& replacement;
    const std::string& x;
    std::set<std::string> replacement_free;

    Term operator()(const Term& m) const {
        switch (m.kind()) {
            case Term::Kind::Var:
                return m.name() == x ? replacement : m;
            case Term::Kind::App: {
                Term f = (*this)(m.fun());
                Term a = (*this)(m.arg());
                if (f.same_node(m.fun()) && a.same_node(m.arg())) {
                    return m;
                }
                return Term::app(std::move(f), std::move(a));
            }
            case Term::Kind::Abs: {
                const std::string& y = m.name();
                if (y == x) {
                    return m;
                }
                if (!replacement_free.count(y)) {
                    Term b = (*this)(m.body());
                    return b.same_node(m.body()) ? m : Term::abs(y, std::move(b));
                }
                std::set<std::string> taken = all_names(m.body());
                collect_names(replacement, taken);
                taken.insert(x);
                taken.insert(y);
                std::string fresh = fresh_name(y, taken);
                return Term::abs(fresh, (*this)(rename_unchecked(m.body(), fresh, y)));
            }
        }
        return m;
    }
};

bool has_eta_mode(Mode mode) { return mode == Mode::Eta || mode == Mode::BetaEta; }
bool has_beta_mode(Mode mode) { return mode == Mode::Beta || mode == Mode::BetaEta; }


}  // namespace

std::set<std::string> free_vars(const Term& m) {
    std::set<std::string> out;
    std::vector<std::string> bound;
    collect_free(m, bound, out);
    return out;
}

std::set<std::string> all_names(const Term& m) {
    std::set<std::string> out;
    collect_names(m, out);
    return out;
}

bool occurs(const Term& m, const std::string& name) { return all_names(m).count(name) > 0; }

Term rename(const Term& m, const std::string& y, const std::string& x) {
    if (y != x && occurs(m, y)) {
        throw UsageError("rename: variable '" + y + "' already occurs in the term");
    }
    return rename_unchecked(m, y, x);
}

std::string canonical_key(const Term& m) {
    std::string out;
    std::vector<std::string> bound;
    write_key(m, bound, out);
    return out;
}

bool alpha_eq(const Term& a, const Term& b) {
    return a.same_node(b) || canonical_key(a) == canonical_key(b);
}

Term subst(const Term& m, const Term& n, const std::string& x) {
    Substituter s{n, x, free_vars(n)};
    return s(m);
}

bool is_beta_redex(const Term& m) { return m.is_app() && m.fun().is_abs(); }

bool is_eta_redex(const Term& m) {
    if (!m.is_abs()) {
        return false;
    }
    const Term& b = m.body();
    return b.is_app() && b.arg().is_var() && b.arg().name() == m.name() &&
           !is_free_in(b.fun(), m.name());
}

namespace {

Term contract_beta(const Term& m) { return subst(m.fun().body(), m.arg(), m.fun().name()); }

void collect_reducts_impl(const Term& m, Mode mode, Path& path, std::vector<Reduct>& out,
                          const std::function<Term(const Term&)>& wrap) {
    switch (m.kind()) {
        case Term::Kind::Var:
            return;
        case Term::Kind::App: {
            if (has_beta_mode(mode) && is_beta_redex(m)) {
                out.push_back({wrap(contract_beta(m)), path});
            }
            path.push_back(0);
            collect_reducts_impl(m.fun(), mode, path, out,
                                 [&](const Term& t) { return wrap(Term::app(t, m.arg())); });
            path.back() = 1;
            collect_reducts_impl(m.arg(), mode, path, out,
                                 [&](const Term& t) { return wrap(Term::app(m.fun(), t)); });
            path.pop_back();
            return;
        }
        case Term::Kind::Abs: {
            if (has_eta_mode(mode) && is_eta_redex(m)) {
                out.push_back({wrap(m.body().fun()), path});
            }
            path.push_back(0);
            collect_reducts_impl(m.body(), mode, path, out,
                                 [&](const Term& t) { return wrap(Term::abs(m.name(), t)); });
            path.pop_back();
            return;
        }
    }
}

}  // namespace

std::vector<Reduct> step_reducts(const Term& m, Mode mode) {
    std::vector<Reduct> out;
    Path path;
    collect_reducts_impl(m, mode, path, out, [](const Term& t) { return t; });
    return out;
}

std::optional<Term> step_normal_order(const Term& m, Mode mode) {
    switch (m.kind()) {
        case Term::Kind::Var:
            return std::nullopt;
        case Term::Kind::App: {
            if (has_beta_mode(mode) && is_beta_redex(m)) {
                return contract_beta(m);
            }
            if (auto f = step_normal_order(m.fun(), mode)) {
                return Term::app(std::move(*f), m.arg());
            }
            if (auto a = step_normal_order(m.arg(), mode)) {
                return Term::app(m.fun(), std::move(*a));
            }
            return std::nullopt;
        }
        case Term::Kind::Abs: {
            if (has_eta_mode(mode) && is_eta_redex(m)) {
                return m.body().fun();
            }
            if (auto b = step_normal_order(m.body(), mode)) {
                return Term::abs(m.name(), std::move(*b));
            }
            return std::nullopt;
        }
    }
    return std::nullopt;
}

NormalizeResult normalize(const Term& m, Mode mode, std::size_t fuel) {
    if (fuel == 0) {
        throw UsageError("normalize: fuel must be at least 1");
    }
    Term current = m;
    std::size_t steps = 0;
    while (true) {
        auto next = step_normal_order(current, mode);
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

std::size_t count_redex_sites(const Term& m) {
    std::size_t here = (is_beta_redex(m) || is_eta_redex(m)) ? 1 : 0;
    switch (m.kind()) {
        case Term::Kind::Var:
            return here;
        case Term::Kind::App:
            return here + count_redex_sites(m.fun()) + count_redex_sites(m.arg());
        case Term::Kind::Abs:
            return here + count_redex_sites(m.body());
    }
    return here;
}

namespace {

void push_unique(std::vector<Term>& out, std::unordered_set<std::string>& seen, Term t) {
    if (seen.insert(canonical_key(t)).second) {
        out.push_back(std::move(t));
    }
}

std::vector<Term> parallel_impl(const Term& m) {
    std::vector<Term> out;
    std::unordered_set<std::string> seen;
    switch (m.kind()) {
        case Term::Kind::Var:
            out.push_back(m);
            break;
        case Term::Kind::App: {
            auto fs = parallel_impl(m.fun());
            auto as = parallel_impl(m.arg());
            for (const auto& f : fs) {
                for (const auto& a : as) {
                    push_unique(out, seen, Term::app(f, a));
                }
            }
            if (m.fun().is_abs()) {
                for (const auto& q : parallel_impl(m.fun().body())) {
                    for (const auto& a : as) {
                        push_unique(out, seen, subst(q, a, m.fun().name()));
                    }
                }
            }
            break;
        }
        case Term::Kind::Abs: {
            for (const auto& b : parallel_impl(m.body())) {
                push_unique(out, seen, Term::abs(m.name(), b));
            }
            if (is_eta_redex(m)) {
                for (const auto& p : parallel_impl(m.body().fun())) {
                    push_unique(out, seen, p);
                }
            }
            break;
        }
    }
    return out;
}

}  // namespace

std::vector<Term> parallel_reducts(const Term& m, std::size_t redex_limit) {
    if (count_redex_sites(m) > redex_limit) {
        throw UsageError("parallel_reducts: term has more than " + std::to_string(redex_limit) +
                         " redex sites");
    }
    return parallel_impl(m);
}

Term max_parallel_reduct(const Term& m) {
    switch (m.kind()) {
        case Term::Kind::Var:
            return m;
        case Term::Kind::App:
            if (is_beta_redex(m)) {
                return subst(max_parallel_reduct(m.fun().body()), max_parallel_reduct(m.arg()),
                             m.fun().name());
            }
            return Term::app(max_parallel_reduct(m.fun()), max_parallel_reduct(m.arg()));
        case Term::Kind::Abs:
            if (is_eta_redex(m)) {
                return max_parallel_reduct(m.body().fun());
            }
            return Term::abs(m.name(), max_parallel_reduct(m.body()));
    }
    return m;
}

UntypedGraph reduction_graph(const Term& m, std::size_t max_vertices, std::size_t max_depth,
                             Mode mode) {
    if (max_vertices == 0 || max_depth == 0) {
        throw UsageError("reduction_graph: budgets must be at least 1");
    }
    return explore_reductions(
        m,
        [mode](const Term& t) {
            std::vector<std::pair<Term, Path>> out;
            for (auto& r : step_reducts(t, mode)) {
                out.emplace_back(std::move(r.term), std::move(r.position));
            }
            return out;
        },
        [](const Term& t) { return canonical_key(t); }, max_vertices, max_depth);
}

}  // namespace lcw::untyped

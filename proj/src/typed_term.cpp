#include "lcw/typed_term.hpp"

#include <algorithm>

#include "lcw/names.hpp"

namespace lcw::typed {

TypedTerm TypedTerm::make(Node node) {
    std::size_t size = 1;
    for (const auto& k : node.kids) {
        size += k.size();
    }
    node.size = size;
    return TypedTerm(std::make_shared<const Node>(std::move(node)));
}

TypedTerm TypedTerm::var(std::string name) {
    return make({Kind::Var, std::move(name), {}, {}, {}, {}, 0});
}
TypedTerm TypedTerm::app(TypedTerm f, TypedTerm a) {
    return make({Kind::App, {}, {}, {}, {}, {std::move(f), std::move(a)}, 0});
}
TypedTerm TypedTerm::abs(std::string x, std::optional<Type> annot, TypedTerm body) {
    return make({Kind::Abs, std::move(x), {}, std::move(annot), {}, {std::move(body)}, 0});
}
TypedTerm TypedTerm::pair(TypedTerm l, TypedTerm r) {
    return make({Kind::Pair, {}, {}, {}, {}, {std::move(l), std::move(r)}, 0});
}
TypedTerm TypedTerm::proj1(TypedTerm t) { return make({Kind::Proj1, {}, {}, {}, {}, {std::move(t)}, 0}); }
TypedTerm TypedTerm::proj2(TypedTerm t) { return make({Kind::Proj2, {}, {}, {}, {}, {std::move(t)}, 0}); }
TypedTerm TypedTerm::star() {
    static const TypedTerm s = make({Kind::Star, {}, {}, {}, {}, {}, 0});
    return s;
}
TypedTerm TypedTerm::in1(Type full, TypedTerm t) {
    return make({Kind::In1, {}, {}, std::move(full), {}, {std::move(t)}, 0});
}
TypedTerm TypedTerm::in2(Type full, TypedTerm t) {
    return make({Kind::In2, {}, {}, std::move(full), {}, {std::move(t)}, 0});
}
TypedTerm TypedTerm::case_of(TypedTerm scrut, std::string x, std::optional<Type> annot_x,
                             TypedTerm left, std::string y, std::optional<Type> annot_y,
                             TypedTerm right) {
    return make({Kind::Case, std::move(x), std::move(y), std::move(annot_x), std::move(annot_y),
                 {std::move(scrut), std::move(left), std::move(right)}, 0});
}
TypedTerm TypedTerm::abort(Type target, TypedTerm t) {
    return make({Kind::Abort, {}, {}, std::move(target), {}, {std::move(t)}, 0});
}
TypedTerm TypedTerm::true_c() {
    static const TypedTerm t = make({Kind::True, {}, {}, {}, {}, {}, 0});
    return t;
}
TypedTerm TypedTerm::false_c() {
    static const TypedTerm f = make({Kind::False, {}, {}, {}, {}, {}, 0});
    return f;
}
TypedTerm TypedTerm::zero() {
    static const TypedTerm z = make({Kind::Zero, {}, {}, {}, {}, {}, 0});
    return z;
}
TypedTerm TypedTerm::succ(TypedTerm t) { return make({Kind::Succ, {}, {}, {}, {}, {std::move(t)}, 0}); }
TypedTerm TypedTerm::pred(TypedTerm t) { return make({Kind::Pred, {}, {}, {}, {}, {std::move(t)}, 0}); }
TypedTerm TypedTerm::iszero(TypedTerm t) {
    return make({Kind::IsZero, {}, {}, {}, {}, {std::move(t)}, 0});
}
TypedTerm TypedTerm::if_then_else(TypedTerm c, TypedTerm n, TypedTerm p) {
    return make({Kind::If, {}, {}, {}, {}, {std::move(c), std::move(n), std::move(p)}, 0});
}
TypedTerm TypedTerm::fix(TypedTerm t) { return make({Kind::Fix, {}, {}, {}, {}, {std::move(t)}, 0}); }
TypedTerm TypedTerm::por(TypedTerm l, TypedTerm r) {
    return make({Kind::Por, {}, {}, {}, {}, {std::move(l), std::move(r)}, 0});
}

TypedTerm TypedTerm::with_children(std::vector<TypedTerm> kids) const {
    bool same = kids.size() == node_->kids.size();
    for (std::size_t i = 0; same && i < kids.size(); ++i) {
        same = kids[i].same_node(node_->kids[i]);
    }
    if (same) {
        return *this;
    }
    Node n = *node_;
    n.kids = std::move(kids);
    return make(std::move(n));
}

TypedTerm TypedTerm::with_binders(std::string name, std::string name2) const {
    Node n = *node_;
    n.name = std::move(name);
    n.name2 = std::move(name2);
    return make(std::move(n));
}

TypedTerm TypedTerm::with_annotation(std::optional<Type> annot) const {
    Node n = *node_;
    n.annot = std::move(annot);
    return make(std::move(n));
}

const std::string* TypedTerm::binder_for(std::size_t i) const {
    if (kind() == Kind::Abs && i == 0) {
        return &node_->name;
    }
    if (kind() == Kind::Case) {
        if (i == 1) return &node_->name;
        if (i == 2) return &node_->name2;
    }
    return nullptr;
}

TypedTerm apply(TypedTerm f, std::initializer_list<TypedTerm> args) {
    for (const auto& a : args) {
        f = TypedTerm::app(std::move(f), a);
    }
    return f;
}

TypedTerm numeral(unsigned long n) {
    TypedTerm t = TypedTerm::zero();
    for (unsigned long i = 0; i < n; ++i) {
        t = TypedTerm::succ(std::move(t));
    }
    return t;
}

std::optional<unsigned long> as_numeral(const TypedTerm& m) {
    unsigned long n = 0;
    const TypedTerm* t = &m;
    while (t->is(Kind::Succ)) {
        ++n;
        t = &t->child(0);
    }
    if (t->is(Kind::Zero)) {
        return n;
    }
    return std::nullopt;
}

namespace {

void collect_free(const TypedTerm& m, std::vector<std::string>& bound, std::set<std::string>& out) {
    if (m.is(Kind::Var)) {
        if (std::find(bound.begin(), bound.end(), m.name()) == bound.end()) {
            out.insert(m.name());
        }
        return;
    }
    for (std::size_t i = 0; i < m.arity(); ++i) {
        const std::string* b = m.binder_for(i);
        if (b) bound.push_back(*b);
        collect_free(m.child(i), bound, out);
        if (b) bound.pop_back();
    }
}

void collect_names(const TypedTerm& m, std::set<std::string>& out) {
    if (m.is(Kind::Var)) {
        out.insert(m.name());
    }
    for (std::size_t i = 0; i < m.arity(); ++i) {
        if (const std::string* b = m.binder_for(i)) {
            out.insert(*b);
        }
        collect_names(m.child(i), out);
    }
}

const char* kind_tag(Kind k) {
    switch (k) {
        case Kind::Var: return "v";
        case Kind::App: return "@";
        case Kind::Abs: return "\\";
        case Kind::Pair: return "<";
        case Kind::Proj1: return "p1";
        case Kind::Proj2: return "p2";
        case Kind::Star: return "*";
        case Kind::In1: return "i1";
        case Kind::In2: return "i2";
        case Kind::Case: return "case";
        case Kind::Abort: return "abort";
        case Kind::True: return "T";
        case Kind::False: return "F";
        case Kind::Zero: return "0";
        case Kind::Succ: return "S";
        case Kind::Pred: return "P";
        case Kind::IsZero: return "Z";
        case Kind::If: return "if";
        case Kind::Fix: return "Y";
        case Kind::Por: return "por";
    }
    return "?";
}

void write_key(const TypedTerm& m, std::vector<std::string>& bound, std::string& out) {
    if (m.is(Kind::Var)) {
        for (std::size_t i = bound.size(); i-- > 0;) {
            if (bound[i] == m.name()) {
                out += '#' + std::to_string(bound.size() - 1 - i) + ';';
                return;
            }
        }
        out += '$' + m.name() + ';';
        return;
    }
    out += kind_tag(m.kind());
    if (m.annot()) out += '[' + types::type_key(*m.annot()) + ']';
    if (m.annot2()) out += '{' + types::type_key(*m.annot2()) + '}';
    out += '(';
    for (std::size_t i = 0; i < m.arity(); ++i) {
        const std::string* b = m.binder_for(i);
        if (b) bound.push_back(*b);
        write_key(m.child(i), bound, out);
        if (b) bound.pop_back();
    }
    out += ')';
}

TypedTerm rename_free(const TypedTerm& m, const std::string& from, const std::string& to) {
    return subst(m, TypedTerm::var(to), from);
}

}  // namespace

std::set<std::string> free_vars(const TypedTerm& m) {
    std::set<std::string> out;
    std::vector<std::string> bound;
    collect_free(m, bound, out);
    return out;
}

std::set<std::string> all_names(const TypedTerm& m) {
    std::set<std::string> out;
    collect_names(m, out);
    return out;
}

bool is_free_in(const std::string& x, const TypedTerm& m) {
    if (m.is(Kind::Var)) {
        return m.name() == x;
    }
    for (std::size_t i = 0; i < m.arity(); ++i) {
        const std::string* b = m.binder_for(i);
        if ((!b || *b != x) && is_free_in(x, m.child(i))) {
            return true;
        }
    }
    return false;
}

std::string canonical_key(const TypedTerm& m) {
    std::string out;
    std::vector<std::string> bound;
    write_key(m, bound, out);
    return out;
}

bool alpha_eq(const TypedTerm& a, const TypedTerm& b) {
    return a.same_node(b) || canonical_key(a) == canonical_key(b);
}

namespace {

struct Substituter {
    const TypedTerm& replacement;
    const std::string& x;
    std::set<std::string> replacement_free;

    TypedTerm operator()(const TypedTerm& m) const {
        if (m.is(Kind::Var)) {
            return m.name() == x ? replacement : m;
        }
        if (!is_free_in(x, m)) {
            return m;
        }
        std::vector<TypedTerm> kids;
        std::string name = m.name();
        std::string name2 = m.name2();
        bool renamed = false;
        for (std::size_t i = 0; i < m.arity(); ++i) {
            const std::string* b = m.binder_for(i);
            TypedTerm child = m.child(i);
            if (b && *b == x) {
                kids.push_back(child);
                continue;
            }
            if (b && replacement_free.count(*b) && is_free_in(x, child)) {
                std::set<std::string> taken = all_names(m);
                for (const auto& v : all_names(replacement)) taken.insert(v);
                taken.insert(x);
                std::string fresh = fresh_name(*b, taken);
                child = rename_free(child, *b, fresh);
                (m.kind() == Kind::Case && i == 2 ? name2 : name) = fresh;
                renamed = true;
            }
            kids.push_back((*this)(child));
        }
        TypedTerm out = m.with_children(std::move(kids));
        return renamed ? out.with_binders(std::move(name), std::move(name2)) : out;
    }
};

}  // namespace

TypedTerm subst(const TypedTerm& m, const TypedTerm& n, const std::string& x) {
    Substituter s{n, x, free_vars(n)};
    return s(m);
}

const TypedTerm& subterm_at(const TypedTerm& m, const Path& path) {
    const TypedTerm* t = &m;
    for (int i : path) {
        t = &t->child(static_cast<std::size_t>(i));
    }
    return *t;
}

TypedTerm replace_at(const TypedTerm& m, const Path& path, const TypedTerm& replacement) {
    if (path.empty()) {
        return replacement;
    }
    std::vector<TypedTerm> kids = m.children();
    Path rest(path.begin() + 1, path.end());
    auto i = static_cast<std::size_t>(path.front());
    kids[i] = replace_at(kids[i], rest, replacement);
    return m.with_children(std::move(kids));
}

std::optional<Type> lookup(const Context& ctx, const std::string& x) {
    for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) {
        if (it->first == x) {
            return it->second;
        }
    }
    return std::nullopt;
}

TypeError::TypeError(std::string message, Path path, std::string rule)
    : std::runtime_error(std::move(message)), path_(std::move(path)), rule_(std::move(rule)) {}

}  // namespace lcw::typed

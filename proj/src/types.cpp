#include "lcw/types.hpp"

#include <algorithm>

namespace lcw::types {

Type Type::base(std::string name) {
    return Type(std::make_shared<const Node>(Node{Kind::Base, std::move(name), {}, 1, 0}));
}

Type Type::var(std::string name) {
    return Type(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}, 1, 0}));
}

Type Type::unit() {
    static const Type u(std::make_shared<const Node>(Node{Kind::Unit, "1", {}, 1, 0}));
    return u;
}

Type Type::void_type() {
    static const Type v(std::make_shared<const Node>(Node{Kind::Void, "0", {}, 1, 0}));
    return v;
}

Type Type::binary(Kind kind, Type l, Type r) {
    std::size_t size = 1 + l.size() + r.size();
    std::size_t depth = 1 + std::max(l.depth(), r.depth());
    return Type(std::make_shared<const Node>(
        Node{kind, {}, {std::move(l), std::move(r)}, size, depth}));
}

Type Type::arrow(Type dom, Type cod) { return binary(Kind::Arrow, std::move(dom), std::move(cod)); }
Type Type::product(Type l, Type r) { return binary(Kind::Product, std::move(l), std::move(r)); }
Type Type::sum(Type l, Type r) { return binary(Kind::Sum, std::move(l), std::move(r)); }

bool Type::operator==(const Type& other) const {
    if (node_ == other.node_) {
        return true;
    }
    if (kind() != other.kind() || size() != other.size() || name() != other.name()) {
        return false;
    }
    for (std::size_t i = 0; i < node_->kids.size(); ++i) {
        if (node_->kids[i] != other.node_->kids[i]) {
            return false;
        }
    }
    return true;
}

bool Type::operator<(const Type& other) const {
    if (node_ == other.node_) {
        return false;
    }
    if (kind() != other.kind()) {
        return kind() < other.kind();
    }
    if (name() != other.name()) {
        return name() < other.name();
    }
    for (std::size_t i = 0; i < node_->kids.size(); ++i) {
        if (node_->kids[i] != other.node_->kids[i]) {
            return node_->kids[i] < other.node_->kids[i];
        }
    }
    return false;
}

Type arrows(const std::vector<Type>& doms, Type cod) {
    for (auto it = doms.rbegin(); it != doms.rend(); ++it) {
        cod = Type::arrow(*it, std::move(cod));
    }
    return cod;
}

namespace {

void collect(const Type& a, Type::Kind kind, std::set<std::string>& out) {
    if (a.kind() == kind) {
        out.insert(a.name());
    }
    if (a.is_arrow() || a.is_product() || a.is_sum()) {
        collect(a.left(), kind, out);
        collect(a.right(), kind, out);
    }
}

bool binary(const Type& a) { return a.is_arrow() || a.is_product() || a.is_sum(); }

void print(const Type& a, bool unicode, std::string& out) {
    auto wrap = [&](const Type& t, bool parens) {
        if (parens) out += '(';
        print(t, unicode, out);
        if (parens) out += ')';
    };
    switch (a.kind()) {
        case Type::Kind::Base:
        case Type::Kind::Var:
        case Type::Kind::Unit:
        case Type::Kind::Void:
            out += a.name();
            return;
        case Type::Kind::Arrow:
            wrap(a.left(), a.left().is_arrow());
            out += unicode ? " → " : " -> ";
            wrap(a.right(), false);
            return;
        case Type::Kind::Product:
            wrap(a.left(), a.left().is_arrow() || a.left().is_sum());
            out += unicode ? " × " : " * ";
            wrap(a.right(), binary(a.right()));
            return;
        case Type::Kind::Sum:
            wrap(a.left(), a.left().is_arrow());
            out += " + ";
            wrap(a.right(), a.right().is_arrow() || a.right().is_sum());
            return;
    }
}

}  // namespace

std::set<std::string> type_vars(const Type& a) {
    std::set<std::string> out;
    collect(a, Type::Kind::Var, out);
    return out;
}

std::set<std::string> base_names(const Type& a) {
    std::set<std::string> out;
    collect(a, Type::Kind::Base, out);
    return out;
}

bool has_sums(const Type& a) {
    if (a.is_sum() || a.is(Type::Kind::Void)) {
        return true;
    }
    return binary(a) && (has_sums(a.left()) || has_sums(a.right()));
}

bool occurs(const std::string& var, const Type& a) {
    if (a.is(Type::Kind::Var)) {
        return a.name() == var;
    }
    return binary(a) && (occurs(var, a.left()) || occurs(var, a.right()));
}

std::string type_key(const Type& a) {
    switch (a.kind()) {
        case Type::Kind::Base: return "b" + a.name() + ";";
        case Type::Kind::Var: return "v" + a.name() + ";";
        case Type::Kind::Unit: return "1";
        case Type::Kind::Void: return "0";
        case Type::Kind::Arrow: return ">" + type_key(a.left()) + type_key(a.right());
        case Type::Kind::Product: return "*" + type_key(a.left()) + type_key(a.right());
        case Type::Kind::Sum: return "+" + type_key(a.left()) + type_key(a.right());
    }
    return "?";
}

std::string to_string(const Type& a, bool unicode) {
    std::string out;
    print(a, unicode, out);
    return out;
}

}  // namespace lcw::types

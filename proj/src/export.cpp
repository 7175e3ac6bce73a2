#include "lcw/export.hpp"

namespace lcw::exporter {

std::string path_label(const Path& p) {
    if (p.empty()) {
        return "root";
    }
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i > 0) {
            out += '.';
        }
        out += std::to_string(p[i]);
    }
    return out;
}

std::string dot_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out;
}

namespace {

json node(const char* kind, json children = json::array()) {
    return json{{"kind", kind}, {"children", std::move(children)}};
}

const char* kind_name(typed::Kind k) {
    switch (k) {
        case typed::Kind::Var: return "var";
        case typed::Kind::App: return "app";
        case typed::Kind::Abs: return "abs";
        case typed::Kind::Pair: return "pair";
        case typed::Kind::Proj1: return "pi1";
        case typed::Kind::Proj2: return "pi2";
        case typed::Kind::Star: return "star";
        case typed::Kind::In1: return "in1";
        case typed::Kind::In2: return "in2";
        case typed::Kind::Case: return "case";
        case typed::Kind::Abort: return "abort";
        case typed::Kind::True: return "true";
        case typed::Kind::False: return "false";
        case typed::Kind::Zero: return "zero";
        case typed::Kind::Succ: return "succ";
        case typed::Kind::Pred: return "pred";
        case typed::Kind::IsZero: return "iszero";
        case typed::Kind::If: return "if";
        case typed::Kind::Fix: return "fix";
        case typed::Kind::Por: return "por";
    }
    return "?";
}

}  // namespace

json to_json(const untyped::Term& m) {
    using K = untyped::Term::Kind;
    switch (m.kind()) {
        case K::Var: {
            json j = node("var");
            j["name"] = m.name();
            return j;
        }
        case K::App:
            return node("app", json::array({to_json(m.fun()), to_json(m.arg())}));
        case K::Abs: {
            json j = node("abs", json::array({to_json(m.body())}));
            j["binder"] = m.name();
            return j;
        }
    }
    return nullptr;
}

json to_json(const combinatory::CTerm& a) {
    using K = combinatory::CTerm::Kind;
    switch (a.kind()) {
        case K::Var: {
            json j = node("var");
            j["name"] = a.name();
            return j;
        }
        case K::S: return node("S");
        case K::K: return node("K");
        case K::App: return node("app", json::array({to_json(a.fun()), to_json(a.arg())}));
    }
    return nullptr;
}

json to_json(const types::Type& a) {
    using K = types::Type::Kind;
    switch (a.kind()) {
        case K::Base: {
            json j = node("base");
            j["name"] = a.name();
            return j;
        }
        case K::Var: {
            json j = node("tvar");
            j["name"] = a.name();
            return j;
        }
        case K::Arrow: return node("arrow", json::array({to_json(a.left()), to_json(a.right())}));
        case K::Product: return node("product", json::array({to_json(a.left()), to_json(a.right())}));
        case K::Sum: return node("sum", json::array({to_json(a.left()), to_json(a.right())}));
        case K::Unit: return node("unit");
        case K::Void: return node("void");
    }
    return nullptr;
}

json to_json(const typed::TypedTerm& m) {
    json kids = json::array();
    for (const auto& c : m.children()) {
        kids.push_back(to_json(c));
    }
    json j = node(kind_name(m.kind()), std::move(kids));
    switch (m.kind()) {
        case typed::Kind::Var:
            j["name"] = m.name();
            break;
        case typed::Kind::Abs:
            j["binder"] = m.name();
            break;
        case typed::Kind::Case:
            j["binders"] = json::array({m.name(), m.name2()});
            break;
        default:
            break;
    }
    if (m.annot()) {
        j["type"] = to_json(*m.annot());
    }
    if (m.annot2()) {
        j["type2"] = to_json(*m.annot2());
    }
    return j;
}

json to_json(const systemf::FType& a) {
    using K = systemf::FType::Kind;
    switch (a.kind()) {
        case K::Var: {
            json j = node("tvar");
            j["name"] = a.name();
            return j;
        }
        case K::Arrow: return node("arrow", json::array({to_json(a.left()), to_json(a.right())}));
        case K::Forall: {
            json j = node("forall", json::array({to_json(a.body())}));
            j["binder"] = a.name();
            return j;
        }
    }
    return nullptr;
}

json to_json(const systemf::FTerm& m) {
    using K = systemf::FTerm::Kind;
    json kids = json::array();
    for (const auto& c : m.children()) {
        kids.push_back(to_json(c));
    }
    switch (m.kind()) {
        case K::Var: {
            json j = node("var");
            j["name"] = m.name();
            return j;
        }
        case K::App: return node("app", std::move(kids));
        case K::Abs: {
            json j = node("abs", std::move(kids));
            j["binder"] = m.name();
            j["type"] = to_json(m.type());
            return j;
        }
        case K::TyApp: {
            json j = node("tyapp", std::move(kids));
            j["type"] = to_json(m.type());
            return j;
        }
        case K::TyAbs: {
            json j = node("tyabs", std::move(kids));
            j["binder"] = m.name();
            return j;
        }
    }
    return nullptr;
}

}  // namespace lcw::exporter

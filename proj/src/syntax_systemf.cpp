#include "lcw/syntax.hpp"
#include "lexer.hpp"

namespace lcw::syntax {

namespace {

using detail::Tok;
using detail::TokenStream;
using systemf::FTerm;
using systemf::FType;

FType ftype(TokenStream& ts);

FType ftype_atom(TokenStream& ts) {
    if (ts.at(Tok::Number)) {
        const std::string& text = ts.peek().text;
        if (text == "1") { ts.next(); return systemf::unit_type(); }
        if (text == "0") { ts.next(); return systemf::void_type(); }
    }
    if (ts.accept(Tok::Bottom)) return systemf::void_type();
    if (ts.at(Tok::Ident)) {
        std::string name = ts.next().text;
        if (name == "bool") return systemf::bool_type();
        if (name == "nat") return systemf::nat_type();
        if (name == "tree") return systemf::tree_type();
        return FType::var(name);
    }
    if (ts.accept(Tok::LParen)) {
        FType t = ftype(ts);
        ts.expect(Tok::RParen);
        return t;
    }
    ts.fail({"type variable", "'1'", "'0'", "'('"});
}

FType ftype_product(TokenStream& ts) {
    FType t = ftype_atom(ts);
    while (ts.at(Tok::Star) || ts.at(Tok::Times)) {
        ts.next();
        t = systemf::product_type(t, ftype_atom(ts));
    }
    return t;
}

FType ftype_sum(TokenStream& ts) {
    FType t = ftype_product(ts);
    while (ts.accept(Tok::Plus)) t = systemf::sum_type(t, ftype_product(ts));
    return t;
}

FType ftype(TokenStream& ts) {
    if (ts.accept(Tok::Forall)) {
        std::vector<std::string> names;
        do {
            names.push_back(ts.expect(Tok::Ident).text);
        } while (ts.at(Tok::Ident));
        ts.expect(Tok::Dot);
        FType body = ftype(ts);
        for (auto it = names.rbegin(); it != names.rend(); ++it) body = FType::forall(*it, body);
        return body;
    }
    FType t = ftype_sum(ts);
    if (ts.accept(Tok::Arrow)) return FType::arrow(t, ftype(ts));
    return t;
}

class FParser {
  public:
    explicit FParser(std::string_view text) : ts_(text) {}

    FTerm parse_all() {
        FTerm t = term();
        if (!ts_.at(Tok::End)) ts_.fail({describe(Tok::End)});
        return t;
    }

  private:
    bool at_open() const { return ts_.at(Tok::Lambda) || ts_.at(Tok::BigLambda); }
    bool at_atom() const { return ts_.at(Tok::Ident) || ts_.at(Tok::Number) || ts_.at(Tok::LParen); }

    FTerm term() {
        if (ts_.accept(Tok::Lambda)) {
            std::vector<std::pair<std::string, FType>> binders;
            do {
                std::string x = ts_.expect(Tok::Ident).text;
                ts_.expect(Tok::Colon);
                binders.emplace_back(x, ftype(ts_));
            } while (ts_.at(Tok::Ident));
            ts_.expect(Tok::Dot);
            FTerm body = term();
            for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = FTerm::abs(it->first, it->second, body);
            return body;
        }
        if (ts_.accept(Tok::BigLambda)) {
            std::vector<std::string> names;
            do {
                names.push_back(ts_.expect(Tok::Ident).text);
            } while (ts_.at(Tok::Ident));
            ts_.expect(Tok::Dot);
            FTerm body = term();
            for (auto it = names.rbegin(); it != names.rend(); ++it) body = FTerm::tyabs(*it, body);
            return body;
        }
        if (!at_atom()) ts_.fail({"term"});
        FTerm head = atom();
        while (true) {
            if (at_open()) return FTerm::app(head, term());
            if (ts_.accept(Tok::LBrack)) {
                FType a = ftype(ts_);
                ts_.expect(Tok::RBrack);
                head = FTerm::tyapp(head, a);
            } else if (at_atom()) {
                head = FTerm::app(head, atom());
            } else {
                return head;
            }
        }
    }

    FTerm atom() {
        if (ts_.accept(Tok::LParen)) {
            FTerm t = term();
            ts_.expect(Tok::RParen);
            return t;
        }
        if (ts_.at(Tok::Number)) {
            return FTerm::var(ts_.next().text);
        }
        return FTerm::var(ts_.expect(Tok::Ident).text);
    }

    TokenStream ts_;
};

std::string show_type(const FType& a, bool uni);

std::string show_type_left(const FType& a, bool uni) {
    return a.is(FType::Kind::Var) ? a.name() : "(" + show_type(a, uni) + ")";
}

std::string show_type(const FType& a, bool uni) {
    switch (a.kind()) {
        case FType::Kind::Var: return a.name();
        case FType::Kind::Arrow: return show_type_left(a.left(), uni) + (uni ? " → " : " -> ") + show_type(a.right(), uni);
        case FType::Kind::Forall: {
            std::string out = uni ? "∀" : "forall ";
            out += a.name();
            const FType* body = &a.body();
            while (body->is(FType::Kind::Forall)) {
                out += " " + body->name();
                body = &body->body();
            }
            return out + ". " + show_type(*body, uni);
        }
    }
    return "";
}

std::string show_term(const FTerm& m, bool uni);

std::string show_arg(const FTerm& m, bool uni) {
    return m.is(FTerm::Kind::Var) ? m.name() : "(" + show_term(m, uni) + ")";
}

std::string show_term(const FTerm& m, bool uni) {
    switch (m.kind()) {
        case FTerm::Kind::Var: return m.name();
        case FTerm::Kind::Abs:
            return std::string(uni ? "λ" : "\\") + m.name() + ":" + show_type(m.type(), uni) + ". " +
                   show_term(m.child(0), uni);
        case FTerm::Kind::TyAbs:
            return std::string(uni ? "Λ" : "/\\") + m.name() + ". " + show_term(m.child(0), uni);
        case FTerm::Kind::App:
        case FTerm::Kind::TyApp: {
            std::vector<std::string> parts;
            const FTerm* cur = &m;
            while (cur->is(FTerm::Kind::App) || cur->is(FTerm::Kind::TyApp)) {
                if (cur->is(FTerm::Kind::App)) {
                    parts.push_back(show_arg(cur->child(1), uni));
                } else {
                    parts.push_back("[" + show_type(cur->type(), uni) + "]");
                }
                cur = &cur->child(0);
            }
            std::string out = show_arg(*cur, uni);
            for (auto it = parts.rbegin(); it != parts.rend(); ++it) out += " " + *it;
            return out;
        }
    }
    return "";
}

}  // namespace

systemf::FType parse_ftype(std::string_view text) {
    TokenStream ts(text);
    FType t = ftype(ts);
    if (!ts.at(Tok::End)) ts.fail({describe(Tok::End)});
    return t;
}

std::string print(const systemf::FType& a, PrintStyle style) { return show_type(a, style != PrintStyle::Ascii); }

systemf::FTerm parse_fterm(std::string_view text) { return systemf::expand_numerals(FParser(text).parse_all()); }

std::string print(const systemf::FTerm& m, PrintStyle style) { return show_term(m, style != PrintStyle::Ascii); }

systemf::FContext parse_fcontext(std::string_view text) {
    TokenStream ts(text);
    systemf::FContext ctx;
    if (ts.at(Tok::End)) return ctx;
    do {
        std::string x = ts.expect(Tok::Ident).text;
        ts.expect(Tok::Colon);
        ctx.emplace_back(x, ftype(ts));
    } while (ts.accept(Tok::Comma));
    if (!ts.at(Tok::End)) ts.fail({"','", describe(Tok::End)});
    return ctx;
}

namespace {

systemf::LTree tree(TokenStream& ts) {
    if (ts.accept_word("leaf")) {
        bool paren = ts.accept(Tok::LParen);
        std::size_t n = std::stoul(ts.expect(Tok::Number).text);
        if (paren) ts.expect(Tok::RParen);
        return systemf::LTree::leaf(n);
    }
    if (ts.accept_word("branch")) {
        ts.expect(Tok::LParen);
        systemf::LTree l = tree(ts);
        ts.expect(Tok::Comma);
        systemf::LTree r = tree(ts);
        ts.expect(Tok::RParen);
        return systemf::LTree::branch(std::move(l), std::move(r));
    }
    ts.fail({"'leaf'", "'branch'"});
}

}  // namespace

systemf::LTree parse_tree(std::string_view text) {
    TokenStream ts(text);
    systemf::LTree t = tree(ts);
    if (!ts.at(Tok::End)) ts.fail({describe(Tok::End)});
    return t;
}

}  // namespace lcw::syntax

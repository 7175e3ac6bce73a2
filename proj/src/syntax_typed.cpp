#include <algorithm>
#include <set>

#include "lcw/syntax.hpp"
#include "lexer.hpp"

namespace lcw::syntax {

namespace {

using detail::Tok;
using detail::TokenStream;
using typed::Dialect;
using typed::Kind;
using typed::TypedTerm;
using types::Type;

const std::set<std::string> kCoreKeywords{"pi1", "pi2", "in1", "in2", "case", "of", "abort"};
const std::set<std::string> kPcfKeywords{"T",  "F",    "zero", "succ", "pred", "iszero",
                                         "if", "then", "else", "Y"};

Type parse_type_from(TokenStream& ts);

Type type_atom(TokenStream& ts) {
    if (ts.at(Tok::Number)) {
        const std::string& text = ts.peek().text;
        if (text == "1") { ts.next(); return Type::unit(); }
        if (text == "0") { ts.next(); return Type::void_type(); }
        ts.fail({"'1'", "'0'", "type name", "'('"});
    }
    if (ts.at(Tok::Bottom)) {
        ts.next();
        return Type::void_type();
    }
    if (ts.at(Tok::Ident)) {
        return Type::base(ts.next().text);
    }
    if (ts.accept(Tok::LParen)) {
        Type t = parse_type_from(ts);
        ts.expect(Tok::RParen);
        return t;
    }
    ts.fail({"'1'", "'0'", "type name", "'('"});
}

Type type_product(TokenStream& ts) {
    Type t = type_atom(ts);
    while (ts.at(Tok::Star) || ts.at(Tok::Times)) {
        ts.next();
        t = Type::product(std::move(t), type_atom(ts));
    }
    return t;
}

Type type_sum(TokenStream& ts) {
    Type t = type_product(ts);
    while (ts.accept(Tok::Plus)) {
        t = Type::sum(std::move(t), type_product(ts));
    }
    return t;
}

Type parse_type_from(TokenStream& ts) {
    Type t = type_sum(ts);
    if (ts.accept(Tok::Arrow)) {
        return Type::arrow(std::move(t), parse_type_from(ts));
    }
    return t;
}

class TypedParser {
  public:
    TypedParser(std::string_view text, Dialect d) : ts_(text), dialect_(d) {}

    TypedTerm parse_all() {
        TypedTerm t = term();
        if (!ts_.at(Tok::End)) {
            ts_.fail({describe(Tok::End)});
        }
        return t;
    }

  private:
    bool pcf() const { return dialect_ != Dialect::Stlc; }

    bool is_keyword(const std::string& word) const {
        if (kCoreKeywords.count(word)) return true;
        if (pcf() && kPcfKeywords.count(word)) return true;
        return dialect_ == Dialect::ParallelPcf && word == "POR";
    }

    bool at_open_form() const {
        return ts_.at(Tok::Lambda) || ts_.at_word("case") || (pcf() && ts_.at_word("if"));
    }

    TypedTerm term() {
        if (ts_.at(Tok::Lambda)) return lam();
        if (ts_.at_word("case")) return case_of();
        if (pcf() && ts_.at_word("if")) return if_then_else();
        return app();
    }

    std::optional<Type> annotation() {
        if (ts_.accept(Tok::Colon)) {
            return parse_type_from(ts_);
        }
        return std::nullopt;
    }

    std::string binder() {
        if (!ts_.at(Tok::Ident) || is_keyword(ts_.peek().text)) {
            ts_.fail({"identifier"});
        }
        return ts_.next().text;
    }

    TypedTerm lam() {
        ts_.expect(Tok::Lambda);
        std::vector<std::pair<std::string, std::optional<Type>>> binders;
        do {
            std::string x = binder();
            binders.emplace_back(x, annotation());
        } while (ts_.at(Tok::Ident));
        ts_.expect(Tok::Dot);
        TypedTerm body = term();
        for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
            body = TypedTerm::abs(it->first, it->second, std::move(body));
        }
        return body;
    }

    TypedTerm case_of() {
        ts_.expect_word("case");
        TypedTerm scrut = term();
        ts_.expect_word("of");
        std::string x = binder();
        auto ax = annotation();
        ts_.expect(Tok::FatArrow);
        TypedTerm left = term();
        ts_.expect(Tok::Bar);
        std::string y = binder();
        auto ay = annotation();
        ts_.expect(Tok::FatArrow);
        TypedTerm right = term();
        return TypedTerm::case_of(std::move(scrut), x, ax, std::move(left), y, ay, std::move(right));
    }

    TypedTerm if_then_else() {
        ts_.expect_word("if");
        TypedTerm c = term();
        ts_.expect_word("then");
        TypedTerm n = term();
        ts_.expect_word("else");
        TypedTerm p = term();
        return TypedTerm::if_then_else(std::move(c), std::move(n), std::move(p));
    }

    bool at_atom() const {
        if (ts_.at(Tok::Ident)) {
            const std::string& w = ts_.peek().text;
            return !is_keyword(w) || w == "pi1" || w == "pi2" || w == "in1" || w == "in2" ||
                   w == "abort" ||
                   (pcf() && (w == "T" || w == "F" || w == "zero" || w == "succ" || w == "pred" ||
                              w == "iszero" || w == "Y")) ||
                   w == "POR";
        }
        return ts_.at(Tok::LParen) || ts_.at(Tok::LAngle) || ts_.at(Tok::Star) ||
               (pcf() && ts_.at(Tok::Number));
    }

    TypedTerm app() {
        if (!at_atom()) {
            ts_.fail({"term"});
        }
        TypedTerm head = atom();
        while (true) {
            if (at_open_form()) {
                return TypedTerm::app(std::move(head), term());
            }
            if (!at_atom()) {
                return head;
            }
            head = TypedTerm::app(std::move(head), atom());
        }
    }

    Type bracket_type() {
        ts_.expect(Tok::LBrack);
        Type t = parse_type_from(ts_);
        ts_.expect(Tok::RBrack);
        return t;
    }

    TypedTerm atom() {
        if (ts_.accept(Tok::LParen)) {
            TypedTerm t = term();
            ts_.expect(Tok::RParen);
            return t;
        }
        if (ts_.accept(Tok::LAngle)) {
            TypedTerm l = term();
            ts_.expect(Tok::Comma);
            TypedTerm r = term();
            ts_.expect(Tok::RAngle);
            return TypedTerm::pair(std::move(l), std::move(r));
        }
        if (ts_.accept(Tok::Star)) {
            return TypedTerm::star();
        }
        if (ts_.at(Tok::Number)) {
            return typed::numeral(std::stoul(ts_.next().text));
        }
        std::string w = ts_.next().text;
        if (w == "pi1") return TypedTerm::proj1(atom());
        if (w == "pi2") return TypedTerm::proj2(atom());
        if (w == "in1" || w == "in2") {
            Type full = bracket_type();
            TypedTerm t = atom();
            return w == "in1" ? TypedTerm::in1(full, std::move(t)) : TypedTerm::in2(full, std::move(t));
        }
        if (w == "abort") {
            Type target = bracket_type();
            return TypedTerm::abort(target, atom());
        }
        if (pcf()) {
            if (w == "T") return TypedTerm::true_c();
            if (w == "F") return TypedTerm::false_c();
            if (w == "zero") return TypedTerm::zero();
            if (w == "succ") return TypedTerm::succ(atom());
            if (w == "pred") return TypedTerm::pred(atom());
            if (w == "iszero") return TypedTerm::iszero(atom());
            if (w == "Y") return TypedTerm::fix(atom());
            if (w == "POR" && dialect_ == Dialect::ParallelPcf) {
                TypedTerm l = atom();
                return TypedTerm::por(std::move(l), atom());
            }
        }
        return TypedTerm::var(w);
    }

    TokenStream ts_;
    Dialect dialect_;
};

bool open_right(const TypedTerm& m) {
    switch (m.kind()) {
        case Kind::Abs:
        case Kind::Case:
        case Kind::If:
            return true;
        case Kind::App:
            return open_right(m.child(1));
        default:
            return false;
    }
}

class TypedPrinter {
  public:
    explicit TypedPrinter(PrintStyle style) : style_(style) {}

    void term(const TypedTerm& m, std::string& out) {
        switch (m.kind()) {
            case Kind::Abs: {
                out += style_ == PrintStyle::Ascii ? "\\" : "λ";
                const TypedTerm* t = &m;
                bool first = true;
                while (t->is(Kind::Abs)) {
                    if (!first) out += ' ';
                    out += t->name();
                    if (t->annot()) {
                        out += ':';
                        out += type(*t->annot());
                    }
                    first = false;
                    t = &t->child(0);
                }
                out += ". ";
                term(*t, out);
                return;
            }
            case Kind::Case: {
                out += "case ";
                term(m.child(0), out);
                out += " of ";
                out += m.name();
                if (m.annot()) out += ":" + type(*m.annot());
                out += " => ";
                wrap(m.child(1), m.child(1).is(Kind::Case), out);
                out += " | ";
                out += m.name2();
                if (m.annot2()) out += ":" + type(*m.annot2());
                out += " => ";
                term(m.child(2), out);
                return;
            }
            case Kind::If:
                out += "if ";
                term(m.child(0), out);
                out += " then ";
                term(m.child(1), out);
                out += " else ";
                term(m.child(2), out);
                return;
            case Kind::App: {
                std::vector<const TypedTerm*> spine;
                const TypedTerm* t = &m;
                while (t->is(Kind::App)) {
                    spine.push_back(&t->child(1));
                    t = &t->child(0);
                }
                spine.push_back(t);
                std::reverse(spine.begin(), spine.end());
                for (std::size_t i = 0; i < spine.size(); ++i) {
                    const TypedTerm& part = *spine[i];
                    bool last = i + 1 == spine.size();
                    if (i > 0) out += ' ';
                    bool open = part.is(Kind::Abs) || part.is(Kind::Case) || part.is(Kind::If);
                    wrap(part, part.is(Kind::App) || (open && !last) || (i > 0 && is_prefix_form(part)), out);
                }
                return;
            }
            default:
                atom(m, out);
        }
    }

  private:
    std::string type(const Type& a) const { return types::to_string(a, style_ != PrintStyle::Ascii); }

    void wrap(const TypedTerm& m, bool parens, std::string& out) {
        if (parens) out += '(';
        term(m, out);
        if (parens) out += ')';
    }

    static bool is_prefix_form(const TypedTerm& m) {
        switch (m.kind()) {
            case Kind::Proj1:
            case Kind::Proj2:
            case Kind::In1:
            case Kind::In2:
            case Kind::Abort:
            case Kind::Pred:
            case Kind::IsZero:
            case Kind::Fix:
            case Kind::Por: return true;
            case Kind::Succ: return !typed::as_numeral(m);
            default: return false;
        }
    }

    /// Argument of a prefix form such as pi1 or succ.
    void prefix_arg(const TypedTerm& m, std::string& out) {
        bool simple = m.arity() == 0 || m.is(Kind::Pair);
        if (auto n = typed::as_numeral(m); n && *n > 0) simple = true;
        out += ' ';
        wrap(m, !simple, out);
    }

    void atom(const TypedTerm& m, std::string& out) {
        switch (m.kind()) {
            case Kind::Var: out += m.name(); return;
            case Kind::Star: out += style_ == PrintStyle::Ascii ? "*" : "∗"; return;
            case Kind::True: out += "T"; return;
            case Kind::False: out += "F"; return;
            case Kind::Zero: out += "zero"; return;
            case Kind::Pair:
                out += style_ == PrintStyle::Ascii ? "<" : "⟨";
                term(m.child(0), out);
                out += ", ";
                term(m.child(1), out);
                out += style_ == PrintStyle::Ascii ? ">" : "⟩";
                return;
            case Kind::Proj1: out += "pi1"; prefix_arg(m.child(0), out); return;
            case Kind::Proj2: out += "pi2"; prefix_arg(m.child(0), out); return;
            case Kind::In1:
            case Kind::In2:
                out += m.is(Kind::In1) ? "in1[" : "in2[";
                out += type(*m.annot()) + "]";
                prefix_arg(m.child(0), out);
                return;
            case Kind::Abort:
                out += "abort[" + type(*m.annot()) + "]";
                prefix_arg(m.child(0), out);
                return;
            case Kind::Succ:
                if (auto n = typed::as_numeral(m)) {
                    out += std::to_string(*n);
                    return;
                }
                out += "succ";
                prefix_arg(m.child(0), out);
                return;
            case Kind::Pred: out += "pred"; prefix_arg(m.child(0), out); return;
            case Kind::IsZero: out += "iszero"; prefix_arg(m.child(0), out); return;
            case Kind::Fix: out += "Y"; prefix_arg(m.child(0), out); return;
            case Kind::Por:
                out += "POR";
                prefix_arg(m.child(0), out);
                prefix_arg(m.child(1), out);
                return;
            default:
                wrap(m, true, out);
        }
    }

    PrintStyle style_;
};

}  // namespace

types::Type parse_type(std::string_view text) {
    TokenStream ts(text);
    Type t = parse_type_from(ts);
    if (!ts.at(Tok::End)) {
        ts.fail({describe(Tok::End)});
    }
    return t;
}

std::string print(const types::Type& a, PrintStyle style) {
    return types::to_string(a, style != PrintStyle::Ascii);
}

typed::TypedTerm parse_typed(std::string_view text, typed::Dialect dialect) {
    return TypedParser(text, dialect).parse_all();
}

std::string print(const typed::TypedTerm& m, PrintStyle style) {
    std::string out;
    TypedPrinter(style).term(m, out);
    return out;
}

typed::Context parse_context(std::string_view text) {
    TokenStream ts(text);
    typed::Context ctx;
    if (ts.at(Tok::End)) {
        return ctx;
    }
    do {
        std::string x = ts.expect(Tok::Ident).text;
        ts.expect(Tok::Colon);
        ctx.emplace_back(x, parse_type_from(ts));
    } while (ts.accept(Tok::Comma));
    if (!ts.at(Tok::End)) {
        ts.fail({"','", describe(Tok::End)});
    }
    return ctx;
}

std::string print(const typed::Context& ctx, PrintStyle style) {
    std::string out;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        if (i > 0) out += ", ";
        out += ctx[i].first + ":" + print(ctx[i].second, style);
    }
    return out;
}

}  // namespace lcw::syntax

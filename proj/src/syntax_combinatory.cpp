#include "lcw/syntax.hpp"
#include "lexer.hpp"

namespace lcw::syntax {

namespace {

using combinatory::CTerm;
using detail::Tok;
using detail::TokenStream;

class CombinatoryParser {
  public:
    explicit CombinatoryParser(std::string_view text) : ts_(text) {}

    CTerm parse_all() {
        CTerm t = app();
        if (!ts_.at(Tok::End)) {
            ts_.fail({describe(Tok::End)});
        }
        return t;
    }

  private:
    CTerm app() {
        CTerm head = atom();
        while (ts_.at(Tok::Ident) || ts_.at(Tok::LParen)) {
            head = CTerm::app(std::move(head), atom());
        }
        return head;
    }

    CTerm atom() {
        if (ts_.at(Tok::Ident)) {
            std::string name = ts_.next().text;
            if (name == "S") return CTerm::s();
            if (name == "K") return CTerm::k();
            if (name == "I") return combinatory::i();
            return CTerm::var(name);
        }
        if (!ts_.at(Tok::LParen)) {
            ts_.fail({"identifier", "'('"});
        }
        ts_.next();
        CTerm t = app();
        ts_.expect(Tok::RParen);
        return t;
    }

    TokenStream ts_;
};

bool single_letters(const CTerm& a) {
    if (a.is_app()) {
        return single_letters(a.fun()) && single_letters(a.arg());
    }
    return a.name().size() == 1;
}

void print_c(const CTerm& a, bool compact, std::string& out) {
    if (!a.is_app()) {
        out += a.name();
        return;
    }
    print_c(a.fun(), compact, out);
    if (!compact) {
        out += ' ';
    }
    if (a.arg().is_app()) {
        out += '(';
        print_c(a.arg(), compact, out);
        out += ')';
    } else {
        print_c(a.arg(), compact, out);
    }
}

}  // namespace

combinatory::CTerm parse_combinatory(std::string_view text) {
    return CombinatoryParser(text).parse_all();
}

std::string print(const combinatory::CTerm& a, PrintStyle style) {
    std::string out;
    print_c(a, style == PrintStyle::Compact && single_letters(a), out);
    return out;
}

}  // namespace lcw::syntax

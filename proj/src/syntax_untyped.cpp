#include <algorithm>

#include "lcw/syntax.hpp"
#include "lexer.hpp"

namespace lcw::syntax {

namespace {

std::string format_error(const SourceSpan& span, const std::vector<std::string>& expected,
                         const std::string& found) {
    std::string msg = "parse error at " + std::to_string(span.line) + ":" +
                      std::to_string(span.column) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i > 0) {
            msg += i + 1 == expected.size() ? " or " : ", ";
        }
        msg += expected[i];
    }
    return msg + ", found " + found;
}

}  // namespace

ParseError::ParseError(SourceSpan span, std::vector<std::string> expected, std::string found)
    : std::runtime_error(format_error(span, expected, found)),
      span_(span),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

using detail::Tok;
using detail::TokenStream;
using untyped::Term;

Term church(unsigned long n) {
    Term body = Term::var("x");
    for (unsigned long i = 0; i < n; ++i) {
        body = Term::app(Term::var("f"), body);
    }
    return Term::abs("f", Term::abs("x", body));
}

class UntypedParser {
  public:
    explicit UntypedParser(std::string_view text) : ts_(text) {}

    Term parse_all() {
        Term t = term();
        if (!ts_.at(Tok::End)) {
            ts_.fail({describe(Tok::End)});
        }
        return t;
    }

  private:
    Term term() { return ts_.at(Tok::Lambda) ? lam() : app(); }

    Term lam() {
        ts_.expect(Tok::Lambda);
        std::vector<std::string> binders;
        do {
            binders.push_back(ts_.expect(Tok::Ident).text);
        } while (ts_.at(Tok::Ident));
        ts_.expect(Tok::Dot);
        Term body = term();
        for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
            body = Term::abs(*it, std::move(body));
        }
        return body;
    }

    bool at_atom() const {
        return ts_.at(Tok::Ident) || ts_.at(Tok::LParen) || ts_.at(Tok::HashNumber);
    }

    Term app() {
        if (!at_atom()) {
            ts_.fail({"identifier", "'('", "'\\'", "'#n'"});
        }
        Term head = atom();
        while (true) {
            if (ts_.at(Tok::Lambda)) {
                return Term::app(std::move(head), lam());
            }
            if (!at_atom()) {
                return head;
            }
            head = Term::app(std::move(head), atom());
        }
    }

    Term atom() {
        if (ts_.at(Tok::Ident)) {
            return Term::var(ts_.next().text);
        }
        if (ts_.at(Tok::HashNumber)) {
            return church(std::stoul(ts_.next().text.substr(1)));
        }
        ts_.expect(Tok::LParen);
        Term t = term();
        ts_.expect(Tok::RParen);
        return t;
    }

    TokenStream ts_;
};

bool all_single_letter(const Term& m) {
    auto names = untyped::all_names(m);
    return std::all_of(names.begin(), names.end(),
                       [](const std::string& n) { return n.size() == 1; });
}

class UntypedPrinter {
  public:
    explicit UntypedPrinter(PrintStyle style) : style_(style) {}

    std::string print(const Term& m) {
        std::string out;
        term(m, out);
        return out;
    }

  private:
    void term(const Term& m, std::string& out) {
        if (m.is_abs()) {
            out += style_ == PrintStyle::Ascii ? "\\" : "λ";
            const Term* t = &m;
            bool first = true;
            while (t->is_abs()) {
                if (!first && style_ != PrintStyle::Compact) {
                    out += ' ';
                }
                out += t->name();
                first = false;
                t = &t->body();
            }
            out += style_ == PrintStyle::Compact ? "." : ". ";
            term(*t, out);
            return;
        }
        if (m.is_var()) {
            out += m.name();
            return;
        }
        std::vector<const Term*> spine;
        const Term* t = &m;
        while (t->is_app()) {
            spine.push_back(&t->arg());
            t = &t->fun();
        }
        spine.push_back(t);
        std::reverse(spine.begin(), spine.end());
        for (std::size_t i = 0; i < spine.size(); ++i) {
            const Term& part = *spine[i];
            bool last = i + 1 == spine.size();
            bool parens = part.is_app() || (part.is_abs() && !last);
            if (i > 0 && style_ != PrintStyle::Compact) {
                out += ' ';
            }
            if (parens) {
                out += '(';
                term(part, out);
                out += ')';
            } else {
                term(part, out);
            }
        }
    }

    PrintStyle style_;
};

}  // namespace

untyped::Term parse_untyped(std::string_view text) { return UntypedParser(text).parse_all(); }

std::string print(const untyped::Term& m, PrintStyle style) {
    if (style == PrintStyle::Compact && !all_single_letter(m)) {
        style = PrintStyle::Unicode;
    }
    return UntypedPrinter(style).print(m);
}

}  // namespace lcw::syntax

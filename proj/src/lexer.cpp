#include "lexer.hpp"

#include <cctype>

namespace lcw::syntax::detail {

std::string describe(Tok kind) {
    switch (kind) {
        case Tok::Ident: return "identifier";
        case Tok::Number: return "number";
        case Tok::HashNumber: return "'#n'";
        case Tok::Lambda: return "'\\'";
        case Tok::BigLambda: return "'/\\'";
        case Tok::Forall: return "'forall'";
        case Tok::Dot: return "'.'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LAngle: return "'<'";
        case Tok::RAngle: return "'>'";
        case Tok::LBrack: return "'['";
        case Tok::RBrack: return "']'";
        case Tok::Comma: return "','";
        case Tok::Colon: return "':'";
        case Tok::Star: return "'*'";
        case Tok::Plus: return "'+'";
        case Tok::Times: return "'×'";
        case Tok::Arrow: return "'->'";
        case Tok::FatArrow: return "'=>'";
        case Tok::Bar: return "'|'";
        case Tok::Equals: return "'='";
        case Tok::Bottom: return "'_|_'";
        case Tok::End: return "end of input";
    }
    return "?";
}

namespace {

struct Utf8Symbol {
    std::string_view bytes;
    Tok kind;
};

constexpr Utf8Symbol kUtf8Symbols[] = {
    {"λ", Tok::Lambda},   {"Λ", Tok::BigLambda}, {"∀", Tok::Forall},
    {"→", Tok::Arrow},    {"×", Tok::Times},     {"⟨", Tok::LAngle},
    {"⟩", Tok::RAngle},   {"⇒", Tok::FatArrow},  {"⊥", Tok::Bottom},
    {"∗", Tok::Star},
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    std::size_t line = 1;
    std::size_t line_start = 0;
    auto make = [&](Tok kind, std::size_t start, std::size_t end) {
        out.push_back(Token{kind, std::string(text.substr(start, end - start)),
                            SourceSpan{start, end, line, start - line_start + 1}});
    };
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (c == '\n') {
            ++i;
            ++line;
            line_start = i;
            continue;
        }
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
            while (i < text.size() && text[i] != '\n') {
                ++i;
            }
            continue;
        }
        std::size_t start = i;
        if (std::isalpha(c)) {
            while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                                       text[i] == '_')) {
                ++i;
            }
            std::string_view word = text.substr(start, i - start);
            make(word == "forall" ? Tok::Forall : Tok::Ident, start, i);
            continue;
        }
        if (std::isdigit(c)) {
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                ++i;
            }
            make(Tok::Number, start, i);
            continue;
        }
        if (c == '#' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
            ++i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                ++i;
            }
            make(Tok::HashNumber, start, i);
            continue;
        }
        auto two = text.substr(i, 2);
        if (two == "->") { i += 2; make(Tok::Arrow, start, i); continue; }
        if (two == "=>") { i += 2; make(Tok::FatArrow, start, i); continue; }
        if (two == "/\\") { i += 2; make(Tok::BigLambda, start, i); continue; }
        if (text.substr(i, 3) == "_|_") { i += 3; make(Tok::Bottom, start, i); continue; }
        bool matched = false;
        for (const auto& sym : kUtf8Symbols) {
            if (text.substr(i, sym.bytes.size()) == sym.bytes) {
                i += sym.bytes.size();
                make(sym.kind, start, i);
                matched = true;
                break;
            }
        }
        if (matched) {
            continue;
        }
        Tok kind;
        switch (c) {
            case '\\': kind = Tok::Lambda; break;
            case '.': kind = Tok::Dot; break;
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            case '<': kind = Tok::LAngle; break;
            case '>': kind = Tok::RAngle; break;
            case '[': kind = Tok::LBrack; break;
            case ']': kind = Tok::RBrack; break;
            case ',': kind = Tok::Comma; break;
            case ':': kind = Tok::Colon; break;
            case '*': kind = Tok::Star; break;
            case '+': kind = Tok::Plus; break;
            case '|': kind = Tok::Bar; break;
            case '=': kind = Tok::Equals; break;
            default: {
                std::size_t len = 1;
                while (start + len < text.size() &&
                       (static_cast<unsigned char>(text[start + len]) & 0xC0) == 0x80) {
                    ++len;
                }
                SourceSpan span{start, start + len, line, start - line_start + 1};
                throw ParseError(span, {"token"}, std::string(text.substr(start, len)));
            }
        }
        ++i;
        make(kind, start, i);
    }
    make(Tok::End, text.size(), text.size());
    return out;
}

Token TokenStream::expect(Tok kind) {
    if (!at(kind)) {
        fail({describe(kind)});
    }
    return next();
}

void TokenStream::expect_word(std::string_view word) {
    if (!at_word(word)) {
        fail({"'" + std::string(word) + "'"});
    }
    next();
}

void TokenStream::fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? describe(Tok::End) : "'" + t.text + "'";
    throw ParseError(t.span, std::move(expected), std::move(found));
}

}  // namespace lcw::syntax::detail

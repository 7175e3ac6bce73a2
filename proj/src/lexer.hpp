#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lcw/syntax.hpp"

namespace lcw::syntax::detail {

enum class Tok {
    Ident,
    Number,
    HashNumber,
    Lambda,
    BigLambda,
    Forall,
    Dot,
    LParen,
    RParen,
    LAngle,
    RAngle,
    LBrack,
    RBrack,
    Comma,
    Colon,
    Star,
    Plus,
    Times,
    Arrow,
    FatArrow,
    Bar,
    Equals,
    Bottom,
    End,
};

std::string describe(Tok kind);

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

std::vector<Token> tokenize(std::string_view text);

/// Cursor over a token vector with error reporting helpers.
class TokenStream {
  public:
    explicit TokenStream(std::string_view text) : tokens_(tokenize(text)) {}

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    bool at(Tok kind) const { return peek().kind == kind; }
    bool at_word(std::string_view word) const {
        return peek().kind == Tok::Ident && peek().text == word;
    }
    Token next() {
        Token t = peek();
        if (pos_ + 1 < tokens_.size()) {
            ++pos_;
        }
        return t;
    }
    bool accept(Tok kind) {
        if (at(kind)) {
            next();
            return true;
        }
        return false;
    }
    bool accept_word(std::string_view word) {
        if (at_word(word)) {
            next();
            return true;
        }
        return false;
    }
    Token expect(Tok kind);
    void expect_word(std::string_view word);
    [[noreturn]] void fail(std::vector<std::string> expected) const;

  private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace lcw::syntax::detail

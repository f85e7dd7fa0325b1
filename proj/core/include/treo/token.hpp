#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treo/span.hpp"

namespace treo {

enum class TokenKind {
    End,
    Ident,
    Nat,
    Dec,
    Bool,
    Str,
    // keywords
    KwSection,
    KwImport,
    KwFor,
    KwIf,
    KwElse,
    KwIn,
    KwForall,
    KwExists,
    KwNot,
    KwAnd,
    KwOr,
    KwImplies,
    KwLen,
    // punctuation and operators
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Less,
    Greater,
    LessEq,
    GreaterEq,
    Eq,
    NotEq,
    Comma,
    Semi,
    Dot,
    DotDot,
    Colon,
    Question,
    Bang,
    Bar,
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    Caret,
    Arrow,
    Prime,
};

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    uint64_t nat_value = 0;
    double dec_value = 0;
    bool bool_value = false;
    Span span;
};

const char* token_kind_name(TokenKind k);

// Tokenizes a whole buffer. Whitespace, // line comments and /* */ block
// comments are skipped. Throws SyntaxError on unterminated strings or
// comments and on bytes outside the language's alphabet.
std::vector<Token> tokenize(const std::string& source);

} // namespace treo

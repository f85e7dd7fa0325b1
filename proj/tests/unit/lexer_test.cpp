#include "doctest.h"

#include <vector>

#include "treo/error.hpp"
#include "treo/token.hpp"

using namespace treo;

namespace {

std::vector<TokenKind> kinds(const std::string& src)
{
    std::vector<TokenKind> out;
    for (const auto& t : tokenize(src))
        out.push_back(t.kind);
    return out;
}

} // namespace

TEST_CASE("identifiers, keywords, and booleans")
{
    auto ks = kinds("for iff in true forx not");
    CHECK(ks == std::vector<TokenKind>{TokenKind::KwFor, TokenKind::Ident, TokenKind::KwIn,
                                       TokenKind::Bool, TokenKind::Ident, TokenKind::KwNot,
                                       TokenKind::End});
    auto toks = tokenize("true false");
    CHECK(toks[0].bool_value);
    CHECK_FALSE(toks[1].bool_value);
}

TEST_CASE("numbers")
{
    auto toks = tokenize("0 42 1.5 0.25");
    CHECK(toks[0].kind == TokenKind::Nat);
    CHECK(toks[0].nat_value == 0);
    CHECK(toks[1].nat_value == 42);
    CHECK(toks[2].kind == TokenKind::Dec);
    CHECK(toks[2].dec_value == doctest::Approx(1.5));
    CHECK(toks[3].dec_value == doctest::Approx(0.25));
    CHECK_THROWS_AS(tokenize("007"), SyntaxError);
}

TEST_CASE("a range stays two naturals, not a decimal")
{
    CHECK(kinds("[1..3]") == std::vector<TokenKind>{TokenKind::LBracket, TokenKind::Nat,
                                                    TokenKind::DotDot, TokenKind::Nat,
                                                    TokenKind::RBracket, TokenKind::End});
    CHECK(kinds("a[1:k]") == std::vector<TokenKind>{TokenKind::Ident, TokenKind::LBracket,
                                                    TokenKind::Nat, TokenKind::Colon,
                                                    TokenKind::Ident, TokenKind::RBracket,
                                                    TokenKind::End});
}

TEST_CASE("transition arrows and guards")
{
    CHECK(kinds("empty -{a},true-> full;") ==
          std::vector<TokenKind>{TokenKind::Ident, TokenKind::Minus, TokenKind::LBrace,
                                 TokenKind::Ident, TokenKind::RBrace, TokenKind::Comma,
                                 TokenKind::Bool, TokenKind::Arrow, TokenKind::Ident,
                                 TokenKind::Semi, TokenKind::End});
    CHECK(kinds("m' = a") == std::vector<TokenKind>{TokenKind::Ident, TokenKind::Prime,
                                                    TokenKind::Eq, TokenKind::Ident,
                                                    TokenKind::End});
}

TEST_CASE("comparison operators")
{
    CHECK(kinds("a <= b >= c != d = e < f > g") ==
          std::vector<TokenKind>{TokenKind::Ident, TokenKind::LessEq, TokenKind::Ident,
                                 TokenKind::GreaterEq, TokenKind::Ident, TokenKind::NotEq,
                                 TokenKind::Ident, TokenKind::Eq, TokenKind::Ident,
                                 TokenKind::Less, TokenKind::Ident, TokenKind::Greater,
                                 TokenKind::Ident, TokenKind::End});
    CHECK(kinds("b!") == std::vector<TokenKind>{TokenKind::Ident, TokenKind::Bang, TokenKind::End});
}

TEST_CASE("strings")
{
    auto toks = tokenize("\"MyFIFO1.java\" \"\"");
    CHECK(toks[0].kind == TokenKind::Str);
    CHECK(toks[0].text == "MyFIFO1.java");
    CHECK(toks[1].text.empty());
    CHECK_THROWS_AS(tokenize("\"open"), SyntaxError);
}

TEST_CASE("comments are skipped")
{
    CHECK(kinds("a // line\nb") ==
          std::vector<TokenKind>{TokenKind::Ident, TokenKind::Ident, TokenKind::End});
    CHECK(kinds("a /* block\nspanning */ b") ==
          std::vector<TokenKind>{TokenKind::Ident, TokenKind::Ident, TokenKind::End});
    CHECK_THROWS_AS(tokenize("/* open"), SyntaxError);
}

TEST_CASE("dotted names")
{
    CHECK(kinds("lib.sync") == std::vector<TokenKind>{TokenKind::Ident, TokenKind::Dot,
                                                      TokenKind::Ident, TokenKind::End});
}

TEST_CASE("unknown characters are rejected")
{
    CHECK_THROWS_AS(tokenize("a # b"), SyntaxError);
}

TEST_CASE("spans track lines and columns")
{
    auto toks = tokenize("a\n  b");
    CHECK(toks[0].span.line == 1);
    CHECK(toks[0].span.column == 1);
    CHECK(toks[1].span.line == 2);
    CHECK(toks[1].span.column == 3);
}

#include "treo/token.hpp"

#include <cctype>
#include <map>

#include "treo/error.hpp"

namespace treo {

const char* token_kind_name(TokenKind k)
{
    switch (k) {
    case TokenKind::End: return "end of input";
    case TokenKind::Ident: return "identifier";
    case TokenKind::Nat: return "natural number";
    case TokenKind::Dec: return "decimal number";
    case TokenKind::Bool: return "boolean";
    case TokenKind::Str: return "string";
    case TokenKind::KwSection: return "'section'";
    case TokenKind::KwImport: return "'import'";
    case TokenKind::KwFor: return "'for'";
    case TokenKind::KwIf: return "'if'";
    case TokenKind::KwElse: return "'else'";
    case TokenKind::KwIn: return "'in'";
    case TokenKind::KwForall: return "'forall'";
    case TokenKind::KwExists: return "'exists'";
    case TokenKind::KwNot: return "'not'";
    case TokenKind::KwAnd: return "'and'";
    case TokenKind::KwOr: return "'or'";
    case TokenKind::KwImplies: return "'implies'";
    case TokenKind::KwLen: return "'len'";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::Less: return "'<'";
    case TokenKind::Greater: return "'>'";
    case TokenKind::LessEq: return "'<='";
    case TokenKind::GreaterEq: return "'>='";
    case TokenKind::Eq: return "'='";
    case TokenKind::NotEq: return "'!='";
    case TokenKind::Comma: return "','";
    case TokenKind::Semi: return "';'";
    case TokenKind::Dot: return "'.'";
    case TokenKind::DotDot: return "'..'";
    case TokenKind::Colon: return "':'";
    case TokenKind::Question: return "'?'";
    case TokenKind::Bang: return "'!'";
    case TokenKind::Bar: return "'|'";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Slash: return "'/'";
    case TokenKind::Percent: return "'%'";
    case TokenKind::Caret: return "'^'";
    case TokenKind::Arrow: return "'->'";
    case TokenKind::Prime: return "'''";
    }
    return "?";
}

namespace {

const std::map<std::string, TokenKind>& keywords()
{
    static const std::map<std::string, TokenKind> table = {
        {"section", TokenKind::KwSection},
        {"import", TokenKind::KwImport},
        {"for", TokenKind::KwFor},
        {"if", TokenKind::KwIf},
        {"else", TokenKind::KwElse},
        {"in", TokenKind::KwIn},
        {"forall", TokenKind::KwForall},
        {"exists", TokenKind::KwExists},
        {"not", TokenKind::KwNot},
        {"and", TokenKind::KwAnd},
        {"or", TokenKind::KwOr},
        {"implies", TokenKind::KwImplies},
        {"len", TokenKind::KwLen},
    };
    return table;
}

struct Cursor {
    const std::string& src;
    size_t pos = 0;
    uint32_t line = 1;
    uint32_t col = 1;

    bool done() const { return pos >= src.size(); }
    char peek(size_t ahead = 0) const { return pos + ahead < src.size() ? src[pos + ahead] : '\0'; }

    char advance()
    {
        char c = src[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }

    Span here(uint32_t len = 1) const { return Span{line, col, static_cast<uint32_t>(pos), len}; }
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

} // namespace

std::vector<Token> tokenize(const std::string& source)
{
    std::vector<Token> out;
    Cursor cur{source};

    auto push = [&](TokenKind kind, Span span, std::string text = {}) {
        Token t;
        t.kind = kind;
        t.text = std::move(text);
        t.span = span;
        out.push_back(std::move(t));
        return &out.back();
    };

    while (!cur.done()) {
        char c = cur.peek();
        if (std::isspace(static_cast<unsigned char>(c))) {
            cur.advance();
            continue;
        }
        if (c == '/' && cur.peek(1) == '/') {
            while (!cur.done() && cur.peek() != '\n')
                cur.advance();
            continue;
        }
        if (c == '/' && cur.peek(1) == '*') {
            Span open = cur.here(2);
            cur.advance();
            cur.advance();
            bool closed = false;
            while (!cur.done()) {
                if (cur.peek() == '*' && cur.peek(1) == '/') {
                    cur.advance();
                    cur.advance();
                    closed = true;
                    break;
                }
                cur.advance();
            }
            if (!closed)
                throw SyntaxError("unterminated block comment", open);
            continue;
        }

        Span start = cur.here();
        if (ident_start(c)) {
            std::string word;
            while (!cur.done() && ident_char(cur.peek()))
                word += cur.advance();
            start.length = static_cast<uint32_t>(word.size());
            if (word == "true" || word == "false") {
                Token* t = push(TokenKind::Bool, start, word);
                t->bool_value = (word == "true");
            } else if (auto it = keywords().find(word); it != keywords().end()) {
                push(it->second, start, word);
            } else {
                push(TokenKind::Ident, start, word);
            }
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek())))
                digits += cur.advance();
            if (digits.size() > 1 && digits[0] == '0')
                throw SyntaxError("natural numbers must not have leading zeros", start);
            // a decimal needs a dot followed by a digit; "1..3" stays NAT DOTDOT NAT
            if (cur.peek() == '.' && std::isdigit(static_cast<unsigned char>(cur.peek(1)))) {
                std::string frac;
                cur.advance();
                while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek())))
                    frac += cur.advance();
                std::string lexeme = digits + "." + frac;
                start.length = static_cast<uint32_t>(lexeme.size());
                Token* t = push(TokenKind::Dec, start, lexeme);
                t->dec_value = std::stod(lexeme);
            } else {
                start.length = static_cast<uint32_t>(digits.size());
                Token* t = push(TokenKind::Nat, start, digits);
                t->nat_value = std::stoull(digits);
            }
            continue;
        }
        if (c == '"') {
            cur.advance();
            std::string body;
            bool closed = false;
            while (!cur.done()) {
                char d = cur.advance();
                if (d == '"') {
                    closed = true;
                    break;
                }
                body += d;
            }
            if (!closed)
                throw SyntaxError("unterminated string literal", start);
            start.length = static_cast<uint32_t>(body.size() + 2);
            push(TokenKind::Str, start, body);
            continue;
        }

        cur.advance();
        switch (c) {
        case '{': push(TokenKind::LBrace, start); break;
        case '}': push(TokenKind::RBrace, start); break;
        case '(': push(TokenKind::LParen, start); break;
        case ')': push(TokenKind::RParen, start); break;
        case '[': push(TokenKind::LBracket, start); break;
        case ']': push(TokenKind::RBracket, start); break;
        case ',': push(TokenKind::Comma, start); break;
        case ';': push(TokenKind::Semi, start); break;
        case '?': push(TokenKind::Question, start); break;
        case ':': push(TokenKind::Colon, start); break;
        case '|': push(TokenKind::Bar, start); break;
        case '+': push(TokenKind::Plus, start); break;
        case '*': push(TokenKind::Star, start); break;
        case '/': push(TokenKind::Slash, start); break;
        case '%': push(TokenKind::Percent, start); break;
        case '^': push(TokenKind::Caret, start); break;
        case '\'': push(TokenKind::Prime, start); break;
        case '.':
            if (cur.peek() == '.') {
                cur.advance();
                start.length = 2;
                push(TokenKind::DotDot, start);
            } else {
                push(TokenKind::Dot, start);
            }
            break;
        case '-':
            if (cur.peek() == '>') {
                cur.advance();
                start.length = 2;
                push(TokenKind::Arrow, start);
            } else {
                push(TokenKind::Minus, start);
            }
            break;
        case '<':
            if (cur.peek() == '=') {
                cur.advance();
                start.length = 2;
                push(TokenKind::LessEq, start);
            } else {
                push(TokenKind::Less, start);
            }
            break;
        case '>':
            if (cur.peek() == '=') {
                cur.advance();
                start.length = 2;
                push(TokenKind::GreaterEq, start);
            } else {
                push(TokenKind::Greater, start);
            }
            break;
        case '=':
            push(TokenKind::Eq, start);
            break;
        case '!':
            if (cur.peek() == '=') {
                cur.advance();
                start.length = 2;
                push(TokenKind::NotEq, start);
            } else {
                push(TokenKind::Bang, start);
            }
            break;
        default:
            throw SyntaxError(std::string("unexpected character '") + c + "'", start);
        }
    }

    Token end;
    end.kind = TokenKind::End;
    end.span = cur.here(0);
    out.push_back(end);
    return out;
}

} // namespace treo

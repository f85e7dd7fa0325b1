#include "treo/parser.hpp"

#include <optional>
#include <utility>

#include "treo/error.hpp"
#include "treo/token.hpp"

namespace treo {

namespace {

// Recursive descent over the token stream. The grammar has a handful of
// genuinely ambiguous joints (parenthesised terms versus anonymous
// definitions, predicates versus comparisons); those use save/restore
// speculation, everything else is single-token lookahead.
class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    SourceFileAst file()
    {
        SourceFileAst out;
        if (at(TokenKind::KwSection)) {
            advance();
            out.section = name();
            expect(TokenKind::Semi);
        }
        while (at(TokenKind::KwImport)) {
            advance();
            out.imports.push_back(name());
            expect(TokenKind::Semi);
        }
        while (!at(TokenKind::End)) {
            AssignmentAst a;
            a.span = peek().span;
            a.name = expect(TokenKind::Ident).text;
            a.defn = defn();
            out.assignments.push_back(std::move(a));
        }
        return out;
    }

    ComponentPtr component_entry()
    {
        auto c = comp();
        expect(TokenKind::End);
        return c;
    }

    TermPtr term_entry()
    {
        auto t = term();
        expect(TokenKind::End);
        return t;
    }

    PredPtr pred_entry()
    {
        auto p = pred();
        expect(TokenKind::End);
        return p;
    }

private:
    std::vector<Token> toks_;
    size_t pos_ = 0;

    const Token& peek(size_t ahead = 0) const
    {
        size_t i = pos_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }

    bool at(TokenKind k, size_t ahead = 0) const { return peek(ahead).kind == k; }

    const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    bool accept(TokenKind k)
    {
        if (!at(k))
            return false;
        advance();
        return true;
    }

    const Token& expect(TokenKind k)
    {
        if (!at(k))
            throw SyntaxError(std::string("expected ") + token_kind_name(k) + ", found " +
                                  token_kind_name(peek().kind),
                              peek().span);
        return advance();
    }

    [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(msg, peek().span); }

    size_t save() const { return pos_; }
    void restore(size_t p) { pos_ = p; }

    // ---- names and variables -------------------------------------------

    std::string name()
    {
        std::string out = expect(TokenKind::Ident).text;
        while (at(TokenKind::Dot) && at(TokenKind::Ident, 1)) {
            advance();
            out += '.';
            out += advance().text;
        }
        return out;
    }

    VariableAst variable()
    {
        VariableAst v;
        v.span = peek().span;
        v.base = name();
        while (at(TokenKind::LBracket))
            v.indices.push_back(list());
        return v;
    }

    // ---- lists -----------------------------------------------------------

    ListAst list()
    {
        ListAst out;
        out.span = peek().span;
        expect(TokenKind::LBracket);
        if (accept(TokenKind::RBracket))
            return out;
        out.items.push_back(list_item());
        while (accept(TokenKind::Comma))
            out.items.push_back(list_item());
        expect(TokenKind::RBracket);
        return out;
    }

    ListItemAst list_item()
    {
        // the item's own ':' outranks the slice form of term, so sub-terms
        // stop at the additive level; parenthesise a slice to nest one
        ListItemAst item;
        item.a = term_add();
        if (accept(TokenKind::DotDot)) {
            item.kind = ListItemAst::Kind::Splice;
            item.b = term_add();
        } else if (accept(TokenKind::Colon)) {
            item.kind = ListItemAst::Kind::Range;
            item.b = term_add();
        }
        return item;
    }

    // ---- definitions ------------------------------------------------------

    DefnAstPtr defn()
    {
        Span sp = peek().span;
        if (at(TokenKind::Ident)) {
            DefinitionAst d;
            d.span = sp;
            d.node = DefinitionAst::VarRef{variable()};
            return std::make_shared<const DefinitionAst>(std::move(d));
        }
        return structure_defn();
    }

    DefnAstPtr structure_defn()
    {
        Span sp = peek().span;
        DefinitionAst::Structure s;
        if (at(TokenKind::Less))
            s.params = params();
        if (at(TokenKind::LParen)) {
            s.has_nodes = true;
            s.nodes = nodes();
        }
        s.body = comp();
        DefinitionAst d;
        d.span = sp;
        d.node = std::move(s);
        return std::make_shared<const DefinitionAst>(std::move(d));
    }

    std::vector<VariableAst> params()
    {
        std::vector<VariableAst> out;
        expect(TokenKind::Less);
        if (accept(TokenKind::Greater))
            return out;
        out.push_back(variable());
        while (accept(TokenKind::Comma))
            out.push_back(variable());
        expect(TokenKind::Greater);
        return out;
    }

    std::vector<NodeDeclAst> nodes()
    {
        std::vector<NodeDeclAst> out;
        expect(TokenKind::LParen);
        if (accept(TokenKind::RParen))
            return out;
        out.push_back(node_decl());
        while (accept(TokenKind::Comma))
            out.push_back(node_decl());
        expect(TokenKind::RParen);
        return out;
    }

    NodeDeclAst node_decl()
    {
        NodeDeclAst out;
        out.var = variable();
        if (accept(TokenKind::Question))
            out.io = IoMarker::Input;
        else if (accept(TokenKind::Bang))
            out.io = IoMarker::Output;
        else if (accept(TokenKind::Colon))
            out.io = IoMarker::Mixed;
        if (out.io != IoMarker::None && at(TokenKind::Ident))
            out.type_tag = advance().text;
        return out;
    }

    std::vector<VariableAst> args()
    {
        std::vector<VariableAst> out;
        expect(TokenKind::LParen);
        if (accept(TokenKind::RParen))
            return out;
        out.push_back(variable());
        while (accept(TokenKind::Comma))
            out.push_back(variable());
        expect(TokenKind::RParen);
        return out;
    }

    std::vector<TermPtr> vals()
    {
        std::vector<TermPtr> out;
        expect(TokenKind::Less);
        if (accept(TokenKind::Greater))
            return out;
        out.push_back(term());
        while (accept(TokenKind::Comma))
            out.push_back(term());
        expect(TokenKind::Greater);
        return out;
    }

    // ---- components --------------------------------------------------------

    ComponentPtr comp()
    {
        Span sp = peek().span;
        if (at(TokenKind::KwFor))
            return for_comp();
        if (at(TokenKind::KwIf))
            return if_comp();
        if (at(TokenKind::LBrace))
            return brace_comp();
        if (at(TokenKind::Ident)) {
            VariableAst v = variable();
            if (at(TokenKind::Less) || at(TokenKind::LParen)) {
                DefinitionAst d;
                d.span = v.span;
                d.node = DefinitionAst::VarRef{v};
                return instance_comp(std::make_shared<const DefinitionAst>(std::move(d)), sp);
            }
            ComponentAst c;
            c.span = sp;
            c.node = ComponentAst::VarRef{std::move(v)};
            return std::make_shared<const ComponentAst>(std::move(c));
        }
        // anonymous definition instantiated in place: <p>(n){...}(x) or (n){...}(x)
        if (at(TokenKind::Less) || at(TokenKind::LParen))
            return instance_comp(structure_defn(), sp);
        fail("expected a component");
    }

    ComponentPtr instance_comp(DefnAstPtr d, Span sp)
    {
        ComponentAst::Instance inst;
        inst.defn = std::move(d);
        if (at(TokenKind::Less))
            inst.values = vals();
        inst.args = args();
        ComponentAst c;
        c.span = sp;
        c.node = std::move(inst);
        return std::make_shared<const ComponentAst>(std::move(c));
    }

    ComponentPtr for_comp()
    {
        Span sp = peek().span;
        expect(TokenKind::KwFor);
        expect(TokenKind::LParen);
        std::string var = expect(TokenKind::Ident).text;
        expect(TokenKind::KwIn);
        TermPtr l = term();
        expect(TokenKind::RParen);
        ComponentAst::For f;
        f.var = std::move(var);
        f.list = std::move(l);
        f.body = comp();
        ComponentAst c;
        c.span = sp;
        c.node = std::move(f);
        return std::make_shared<const ComponentAst>(std::move(c));
    }

    ComponentPtr if_comp()
    {
        Span sp = peek().span;
        expect(TokenKind::KwIf);
        ComponentAst::If chain;
        expect(TokenKind::LParen);
        PredPtr p = pred();
        expect(TokenKind::RParen);
        chain.branches.push_back({std::move(p), comp()});
        while (at(TokenKind::KwElse)) {
            advance();
            if (accept(TokenKind::KwIf)) {
                expect(TokenKind::LParen);
                PredPtr q = pred();
                expect(TokenKind::RParen);
                chain.branches.push_back({std::move(q), comp()});
                continue;
            }
            chain.branches.push_back({nullptr, comp()});
            break;
        }
        ComponentAst c;
        c.span = sp;
        c.node = std::move(chain);
        return std::make_shared<const ComponentAst>(std::move(c));
    }

    bool atom_block_ahead() const
    {
        if (at(TokenKind::Str))
            return true;
        if (at(TokenKind::Ident)) {
            if (peek().text == "start" && at(TokenKind::Ident, 1) && at(TokenKind::Semi, 2))
                return true;
            if (at(TokenKind::Minus, 1) && at(TokenKind::LBrace, 2))
                return true;
        }
        return false;
    }

    ComponentPtr brace_comp()
    {
        Span sp = peek().span;
        expect(TokenKind::LBrace);
        if (atom_block_ahead())
            return atom_block(sp);

        std::vector<ComponentPtr> parts;
        while (!at(TokenKind::RBrace) && !at(TokenKind::Bar) && !at(TokenKind::End))
            parts.push_back(comp());
        ComponentAst c;
        c.span = sp;
        if (accept(TokenKind::Bar)) {
            ComponentAst::Comprehension body;
            body.body = std::move(parts);
            body.pred = pred();
            expect(TokenKind::RBrace);
            c.node = std::move(body);
        } else {
            expect(TokenKind::RBrace);
            c.node = ComponentAst::Composition{std::move(parts)};
        }
        return std::make_shared<const ComponentAst>(std::move(c));
    }

    ComponentPtr atom_block(Span sp)
    {
        ComponentAst::Atoms atoms;
        if (at(TokenKind::Str)) {
            while (at(TokenKind::Str)) {
                AtomAst a;
                a.span = peek().span;
                a.node = AtomAst::Opaque{advance().text};
                atoms.atoms.push_back(std::move(a));
            }
            expect(TokenKind::RBrace);
        } else {
            AtomAst a;
            a.span = peek().span;
            AtomAst::Automaton ca;
            if (at(TokenKind::Ident) && peek().text == "start" && at(TokenKind::Ident, 1) &&
                at(TokenKind::Semi, 2)) {
                advance();
                ca.start = advance().text;
                advance();
            }
            while (!at(TokenKind::RBrace)) {
                ca.transitions.push_back(transition());
            }
            expect(TokenKind::RBrace);
            a.node = std::move(ca);
            atoms.atoms.push_back(std::move(a));
        }
        ComponentAst c;
        c.span = sp;
        c.node = std::move(atoms);
        return std::make_shared<const ComponentAst>(std::move(c));
    }

    CaTransitionAst transition()
    {
        CaTransitionAst t;
        t.span = peek().span;
        t.from = expect(TokenKind::Ident).text;
        expect(TokenKind::Minus);
        expect(TokenKind::LBrace);
        if (!at(TokenKind::RBrace)) {
            t.sync.push_back(expect(TokenKind::Ident).text);
            while (accept(TokenKind::Comma))
                t.sync.push_back(expect(TokenKind::Ident).text);
        }
        expect(TokenKind::RBrace);
        if (accept(TokenKind::Comma))
            t.guard = guard();
        expect(TokenKind::Arrow);
        t.to = expect(TokenKind::Ident).text;
        expect(TokenKind::Semi);
        return t;
    }

    std::vector<GuardEqAst> guard()
    {
        std::vector<GuardEqAst> out;
        while (true) {
            if (at(TokenKind::Bool) && !at(TokenKind::Eq, 1)) {
                const Token& b = advance();
                if (!b.bool_value)
                    throw SyntaxError("transition guard 'false' is not allowed", b.span);
            } else {
                GuardEqAst eq;
                eq.lhs = guard_term();
                expect(TokenKind::Eq);
                eq.rhs = guard_term();
                out.push_back(std::move(eq));
            }
            if (!accept(TokenKind::Comma))
                break;
        }
        return out;
    }

    GuardTermAst guard_term()
    {
        GuardTermAst g;
        g.span = peek().span;
        if (at(TokenKind::Ident)) {
            g.ident = advance().text;
            if (accept(TokenKind::Prime))
                g.kind = GuardTermAst::Kind::PrimedIdent;
            else
                g.kind = GuardTermAst::Kind::Ident;
            return g;
        }
        if (at(TokenKind::Nat)) {
            g.kind = GuardTermAst::Kind::Int;
            g.int_value = static_cast<int64_t>(advance().nat_value);
            return g;
        }
        if (at(TokenKind::Minus) && at(TokenKind::Nat, 1)) {
            advance();
            g.kind = GuardTermAst::Kind::Int;
            g.int_value = -static_cast<int64_t>(advance().nat_value);
            return g;
        }
        if (at(TokenKind::Str)) {
            g.kind = GuardTermAst::Kind::Text;
            g.text_value = advance().text;
            return g;
        }
        if (at(TokenKind::Bool)) {
            g.kind = GuardTermAst::Kind::Bool;
            g.bool_value = advance().bool_value;
            return g;
        }
        fail("expected a guard term (port, memory cell or literal)");
    }

    // ---- predicates --------------------------------------------------------

    PredPtr pred() { return pred_implies(); }

    PredPtr pred_implies()
    {
        PredPtr lhs = pred_or();
        if (accept(TokenKind::KwImplies)) {
            PredPtr rhs = pred_implies();
            PredAst p;
            p.span = lhs->span;
            p.node = PredAst::Implies{lhs, rhs};
            return std::make_shared<const PredAst>(std::move(p));
        }
        return lhs;
    }

    PredPtr pred_or()
    {
        PredPtr lhs = pred_and();
        while (at(TokenKind::KwOr)) {
            advance();
            PredPtr rhs = pred_and();
            PredAst p;
            p.span = lhs->span;
            p.node = PredAst::Or{lhs, rhs};
            lhs = std::make_shared<const PredAst>(std::move(p));
        }
        return lhs;
    }

    PredPtr pred_and()
    {
        PredPtr lhs = pred_unary();
        while (at(TokenKind::KwAnd) || at(TokenKind::Comma)) {
            advance();
            PredPtr rhs = pred_unary();
            PredAst p;
            p.span = lhs->span;
            p.node = PredAst::And{lhs, rhs};
            lhs = std::make_shared<const PredAst>(std::move(p));
        }
        return lhs;
    }

    PredPtr pred_unary()
    {
        Span sp = peek().span;
        if (accept(TokenKind::KwNot)) {
            PredAst p;
            p.span = sp;
            p.node = PredAst::Not{pred_unary()};
            return std::make_shared<const PredAst>(std::move(p));
        }
        if (at(TokenKind::KwForall) || at(TokenKind::KwExists)) {
            bool universal = at(TokenKind::KwForall);
            advance();
            PredAst::Quant q;
            q.universal = universal;
            q.var = expect(TokenKind::Ident).text;
            expect(TokenKind::KwIn);
            q.list = term_add(); // the binder's ':' outranks the slice colon
            expect(TokenKind::Colon);
            q.body = pred();
            PredAst p;
            p.span = sp;
            p.node = std::move(q);
            return std::make_shared<const PredAst>(std::move(p));
        }
        return pred_atom();
    }

    PredPtr pred_atom()
    {
        Span sp = peek().span;
        if (at(TokenKind::Bool) && !comparison_ahead_after_bool()) {
            PredAst p;
            p.span = sp;
            p.node = PredAst::BoolConst{advance().bool_value};
            return std::make_shared<const PredAst>(std::move(p));
        }

        // membership: var in list
        if (at(TokenKind::Ident)) {
            size_t mark = save();
            std::optional<VariableAst> v;
            try {
                v = variable();
            } catch (const SyntaxError&) {
            }
            if (v && accept(TokenKind::KwIn)) {
                PredAst p;
                p.span = sp;
                p.node = PredAst::Member{std::move(*v), term()};
                return std::make_shared<const PredAst>(std::move(p));
            }
            restore(mark);
        }

        // comparison, or a bare variable used as a truth value
        {
            size_t mark = save();
            try {
                TermPtr lhs = term();
                if (auto op = comparison_op()) {
                    TermPtr rhs = term();
                    PredAst p;
                    p.span = sp;
                    p.node = PredAst::Compare{*op, lhs, rhs};
                    return std::make_shared<const PredAst>(std::move(p));
                }
                if (const auto* v = std::get_if<TermAst::Var>(&lhs->node)) {
                    PredAst p;
                    p.span = sp;
                    p.node = PredAst::Truth{v->var};
                    return std::make_shared<const PredAst>(std::move(p));
                }
            } catch (const SyntaxError&) {
            }
            restore(mark);
        }

        if (at(TokenKind::LParen)) {
            advance();
            PredPtr inner = pred();
            expect(TokenKind::RParen);
            return inner;
        }
        fail("expected a predicate");
    }

    bool comparison_ahead_after_bool() const
    {
        TokenKind k = peek(1).kind;
        return k == TokenKind::Eq || k == TokenKind::NotEq || k == TokenKind::Less ||
               k == TokenKind::LessEq || k == TokenKind::Greater || k == TokenKind::GreaterEq;
    }

    std::optional<CompareOp> comparison_op()
    {
        switch (peek().kind) {
        case TokenKind::LessEq: advance(); return CompareOp::Le;
        case TokenKind::Less: advance(); return CompareOp::Lt;
        case TokenKind::GreaterEq: advance(); return CompareOp::Ge;
        case TokenKind::Greater: advance(); return CompareOp::Gt;
        case TokenKind::Eq: advance(); return CompareOp::Eq;
        case TokenKind::NotEq: advance(); return CompareOp::Ne;
        default: return std::nullopt;
        }
    }

    // ---- terms ---------------------------------------------------------------

    TermPtr term() { return term_slice(); }

    TermPtr term_slice()
    {
        TermPtr lhs = term_add();
        if (accept(TokenKind::Colon)) {
            TermPtr rhs = term_add();
            TermAst t;
            t.span = lhs->span;
            t.node = TermAst::Slice{lhs, rhs};
            return std::make_shared<const TermAst>(std::move(t));
        }
        return lhs;
    }

    TermPtr term_add()
    {
        TermPtr lhs = term_mul();
        while (at(TokenKind::Plus) || at(TokenKind::Minus)) {
            BinaryOp op = at(TokenKind::Plus) ? BinaryOp::Add : BinaryOp::Sub;
            advance();
            TermPtr rhs = term_mul();
            TermAst t;
            t.span = lhs->span;
            t.node = TermAst::Binary{op, lhs, rhs};
            lhs = std::make_shared<const TermAst>(std::move(t));
        }
        return lhs;
    }

    TermPtr term_mul()
    {
        TermPtr lhs = term_unary();
        while (at(TokenKind::Star) || at(TokenKind::Slash) || at(TokenKind::Percent)) {
            BinaryOp op = at(TokenKind::Star)    ? BinaryOp::Mul
                          : at(TokenKind::Slash) ? BinaryOp::Div
                                                 : BinaryOp::Mod;
            advance();
            TermPtr rhs = term_unary();
            TermAst t;
            t.span = lhs->span;
            t.node = TermAst::Binary{op, lhs, rhs};
            lhs = std::make_shared<const TermAst>(std::move(t));
        }
        return lhs;
    }

    TermPtr term_unary()
    {
        Span sp = peek().span;
        if (accept(TokenKind::Minus)) {
            TermAst t;
            t.span = sp;
            t.node = TermAst::Neg{term_unary()};
            return std::make_shared<const TermAst>(std::move(t));
        }
        return term_power();
    }

    TermPtr term_power()
    {
        TermPtr base = term_postfix();
        if (accept(TokenKind::Caret)) {
            TermPtr exp = term_unary(); // right-associative, minus allowed in the exponent
            TermAst t;
            t.span = base->span;
            t.node = TermAst::Binary{BinaryOp::Pow, base, exp};
            return std::make_shared<const TermAst>(std::move(t));
        }
        return base;
    }

    TermPtr term_postfix()
    {
        TermPtr base = term_primary();
        while (at(TokenKind::LBracket)) {
            // variables swallow their own index lists in term_primary; this
            // handles indexing of other term forms, e.g. [4,5,6][0]
            TermAst t;
            t.span = base->span;
            t.node = TermAst::Index{base, list()};
            base = std::make_shared<const TermAst>(std::move(t));
        }
        return base;
    }

    TermPtr term_primary()
    {
        Span sp = peek().span;
        TermAst t;
        t.span = sp;

        if (at(TokenKind::Nat)) {
            t.node = TermAst::Nat{advance().nat_value};
            return std::make_shared<const TermAst>(std::move(t));
        }
        if (at(TokenKind::Dec)) {
            const Token& tok = advance();
            t.node = TermAst::Dec{tok.dec_value, tok.text};
            return std::make_shared<const TermAst>(std::move(t));
        }
        if (at(TokenKind::Bool)) {
            t.node = TermAst::BoolLit{advance().bool_value};
            return std::make_shared<const TermAst>(std::move(t));
        }
        if (at(TokenKind::Str)) {
            t.node = TermAst::Text{advance().text};
            return std::make_shared<const TermAst>(std::move(t));
        }
        if (at(TokenKind::KwLen)) {
            advance();
            expect(TokenKind::LParen);
            TermPtr arg = term();
            expect(TokenKind::RParen);
            t.node = TermAst::Call{"len", {arg}};
            return std::make_shared<const TermAst>(std::move(t));
        }
        if (at(TokenKind::LBracket)) {
            t.node = TermAst::ListLit{list()};
            return std::make_shared<const TermAst>(std::move(t));
        }
        if (at(TokenKind::LBrace) || at(TokenKind::KwFor) || at(TokenKind::KwIf)) {
            t.node = TermAst::Comp{comp()};
            return std::make_shared<const TermAst>(std::move(t));
        }
        if (at(TokenKind::Ident)) {
            VariableAst v = variable();
            if (at(TokenKind::Less) || at(TokenKind::LParen)) {
                // possibly an instantiation used as a term
                size_t mark = save();
                try {
                    DefinitionAst d;
                    d.span = v.span;
                    d.node = DefinitionAst::VarRef{v};
                    t.node = TermAst::Comp{
                        instance_comp(std::make_shared<const DefinitionAst>(std::move(d)), sp)};
                    return std::make_shared<const TermAst>(std::move(t));
                } catch (const SyntaxError&) {
                    restore(mark);
                }
            }
            t.node = TermAst::Var{std::move(v)};
            return std::make_shared<const TermAst>(std::move(t));
        }
        if (at(TokenKind::Less)) {
            // anonymous parameterised definition literal
            t.node = TermAst::Defn{structure_defn()};
            return std::make_shared<const TermAst>(std::move(t));
        }
        if (at(TokenKind::LParen)) {
            // an anonymous definition (nodes followed by a body), an
            // in-place instantiation of one, or a parenthesised term
            size_t mark = save();
            try {
                DefnAstPtr d = structure_defn();
                if (at(TokenKind::LParen) || at(TokenKind::Less)) {
                    t.node = TermAst::Comp{instance_comp(std::move(d), sp)};
                } else {
                    t.node = TermAst::Defn{std::move(d)};
                }
                return std::make_shared<const TermAst>(std::move(t));
            } catch (const SyntaxError&) {
                restore(mark);
            }
            expect(TokenKind::LParen);
            TermPtr inner = term();
            expect(TokenKind::RParen);
            return inner;
        }
        fail("expected a term");
    }
};

} // namespace

SourceFileAst parse_file(const std::string& source)
{
    Parser p(tokenize(source));
    return p.file();
}

ComponentPtr parse_component(const std::string& source)
{
    Parser p(tokenize(source));
    return p.component_entry();
}

TermPtr parse_term(const std::string& source)
{
    Parser p(tokenize(source));
    return p.term_entry();
}

PredPtr parse_predicate(const std::string& source)
{
    Parser p(tokenize(source));
    return p.pred_entry();
}

} // namespace treo

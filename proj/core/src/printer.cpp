#include "treo/printer.hpp"

#include <sstream>

namespace treo {

namespace {

// Binding strength, loosest first. An operand is parenthesised when its own
// rank is below the minimum its position requires.
enum : int {
    RankSlice = 1,
    RankAdd = 2,
    RankMul = 3,
    RankNeg = 4,
    RankPow = 5,
    RankIndex = 6,
    RankPrimary = 7,
};

int term_rank(const TermAst& t)
{
    return std::visit(
        [](const auto& node) -> int {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, TermAst::Slice>)
                return RankSlice;
            else if constexpr (std::is_same_v<T, TermAst::Binary>)
                return node.op == BinaryOp::Pow   ? RankPow
                       : node.op == BinaryOp::Add ? RankAdd
                       : node.op == BinaryOp::Sub ? RankAdd
                                                  : RankMul;
            else if constexpr (std::is_same_v<T, TermAst::Neg>)
                return RankNeg;
            else if constexpr (std::is_same_v<T, TermAst::Index>)
                return RankIndex;
            else
                return RankPrimary;
        },
        t.node);
}

enum : int {
    RankImplies = 1,
    RankQuant = 1,
    RankOr = 2,
    RankAnd = 3,
    RankNot = 4,
    RankPredAtom = 5,
};

int pred_rank(const PredAst& p)
{
    return std::visit(
        [](const auto& node) -> int {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, PredAst::Implies>)
                return RankImplies;
            else if constexpr (std::is_same_v<T, PredAst::Quant>)
                return RankQuant;
            else if constexpr (std::is_same_v<T, PredAst::Or>)
                return RankOr;
            else if constexpr (std::is_same_v<T, PredAst::And>)
                return RankAnd;
            else if constexpr (std::is_same_v<T, PredAst::Not>)
                return RankNot;
            else
                return RankPredAtom;
        },
        p.node);
}

const char* binary_op_text(BinaryOp op)
{
    switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Pow: return "^";
    }
    return "?";
}

const char* compare_op_text(CompareOp op)
{
    switch (op) {
    case CompareOp::Le: return "<=";
    case CompareOp::Lt: return "<";
    case CompareOp::Ge: return ">=";
    case CompareOp::Gt: return ">";
    case CompareOp::Eq: return "=";
    case CompareOp::Ne: return "!=";
    }
    return "?";
}

class Printer {
public:
    std::string take() { return out_.str(); }

    void file(const SourceFileAst& f)
    {
        if (f.section)
            out_ << "section " << *f.section << ";\n";
        for (const auto& imp : f.imports)
            out_ << "import " << imp << ";\n";
        for (const auto& a : f.assignments) {
            out_ << a.name << " ";
            defn(*a.defn);
            out_ << "\n";
        }
    }

    void defn(const DefinitionAst& d)
    {
        if (const auto* v = std::get_if<DefinitionAst::VarRef>(&d.node)) {
            variable(v->var);
            return;
        }
        const auto& s = std::get<DefinitionAst::Structure>(d.node);
        if (s.params) {
            out_ << "<";
            bool first = true;
            for (const auto& p : *s.params) {
                if (!first)
                    out_ << ", ";
                first = false;
                variable(p);
            }
            out_ << ">";
        }
        if (s.has_nodes) {
            out_ << "(";
            bool first = true;
            for (const auto& n : s.nodes) {
                if (!first)
                    out_ << ", ";
                first = false;
                node_decl(n);
            }
            out_ << ")";
        }
        if (s.params || s.has_nodes)
            out_ << " ";
        comp(*s.body);
    }

    void node_decl(const NodeDeclAst& n)
    {
        variable(n.var);
        switch (n.io) {
        case IoMarker::None: break;
        case IoMarker::Input: out_ << "?"; break;
        case IoMarker::Output: out_ << "!"; break;
        case IoMarker::Mixed: out_ << ":"; break;
        }
        if (n.type_tag)
            out_ << " " << *n.type_tag;
    }

    void comp(const ComponentAst& c)
    {
        std::visit([this](const auto& node) { comp_node(node); }, c.node);
    }

    void comp_node(const ComponentAst::VarRef& v) { variable(v.var); }

    void comp_node(const ComponentAst::Atoms& a)
    {
        out_ << "{";
        for (const auto& at : a.atoms) {
            out_ << " ";
            atom(at);
        }
        out_ << " }";
    }

    void comp_node(const ComponentAst::Composition& c)
    {
        out_ << "{";
        for (const auto& part : c.parts) {
            out_ << " ";
            comp(*part);
        }
        out_ << " }";
    }

    void comp_node(const ComponentAst::Comprehension& c)
    {
        out_ << "{";
        for (const auto& part : c.body) {
            out_ << " ";
            comp(*part);
        }
        out_ << " | ";
        pred(*c.pred, 1);
        out_ << " }";
    }

    void comp_node(const ComponentAst::Instance& inst)
    {
        defn(*inst.defn);
        if (inst.values) {
            out_ << "<";
            bool first = true;
            for (const auto& v : *inst.values) {
                if (!first)
                    out_ << ", ";
                first = false;
                term(*v, 1);
            }
            out_ << ">";
        }
        out_ << "(";
        bool first = true;
        for (const auto& a : inst.args) {
            if (!first)
                out_ << ", ";
            first = false;
            variable(a);
        }
        out_ << ")";
    }

    void comp_node(const ComponentAst::For& f)
    {
        out_ << "for (" << f.var << " in ";
        term(*f.list, 1);
        out_ << ") ";
        comp(*f.body);
    }

    void comp_node(const ComponentAst::If& chain)
    {
        bool first = true;
        for (const auto& b : chain.branches) {
            if (first) {
                out_ << "if (";
                pred(*b.pred, 1);
                out_ << ") ";
            } else if (b.pred) {
                out_ << " else if (";
                pred(*b.pred, 1);
                out_ << ") ";
            } else {
                out_ << " else ";
            }
            first = false;
            comp(*b.body);
        }
    }

    void atom(const AtomAst& a)
    {
        if (const auto* op = std::get_if<AtomAst::Opaque>(&a.node)) {
            out_ << '"' << op->text << '"';
            return;
        }
        const auto& ca = std::get<AtomAst::Automaton>(a.node);
        bool first = true;
        if (ca.start) {
            out_ << "start " << *ca.start << ";";
            first = false;
        }
        for (const auto& t : ca.transitions) {
            if (!first)
                out_ << " ";
            first = false;
            transition(t);
        }
    }

    void transition(const CaTransitionAst& t)
    {
        out_ << t.from << " -{";
        bool first = true;
        for (const auto& p : t.sync) {
            if (!first)
                out_ << ", ";
            first = false;
            out_ << p;
        }
        out_ << "}";
        for (const auto& eq : t.guard) {
            out_ << ", ";
            guard_term(eq.lhs);
            out_ << " = ";
            guard_term(eq.rhs);
        }
        out_ << " -> " << t.to << ";";
    }

    void guard_term(const GuardTermAst& g)
    {
        switch (g.kind) {
        case GuardTermAst::Kind::Ident: out_ << g.ident; break;
        case GuardTermAst::Kind::PrimedIdent: out_ << g.ident << "'"; break;
        case GuardTermAst::Kind::Int: out_ << g.int_value; break;
        case GuardTermAst::Kind::Text: out_ << '"' << g.text_value << '"'; break;
        case GuardTermAst::Kind::Bool: out_ << (g.bool_value ? "true" : "false"); break;
        }
    }

    void pred(const PredAst& p, int min_rank)
    {
        bool parens = pred_rank(p) < min_rank;
        if (parens)
            out_ << "(";
        std::visit([this](const auto& node) { pred_node(node); }, p.node);
        if (parens)
            out_ << ")";
    }

    void pred_node(const PredAst::BoolConst& b) { out_ << (b.value ? "true" : "false"); }

    void pred_node(const PredAst::Member& m)
    {
        variable(m.var);
        out_ << " in ";
        term(*m.list, 1);
    }

    void pred_node(const PredAst::Compare& c)
    {
        term(*c.lhs, 1);
        out_ << " " << compare_op_text(c.op) << " ";
        term(*c.rhs, 1);
    }

    void pred_node(const PredAst::Truth& t) { variable(t.var); }

    void pred_node(const PredAst::Not& n)
    {
        out_ << "not ";
        pred(*n.p, RankNot);
    }

    void pred_node(const PredAst::And& a)
    {
        pred(*a.a, RankAnd);
        out_ << " and ";
        pred(*a.b, RankAnd + 1);
    }

    void pred_node(const PredAst::Or& o)
    {
        pred(*o.a, RankOr);
        out_ << " or ";
        pred(*o.b, RankOr + 1);
    }

    void pred_node(const PredAst::Implies& i)
    {
        pred(*i.a, RankImplies + 1);
        out_ << " implies ";
        pred(*i.b, RankImplies);
    }

    void pred_node(const PredAst::Quant& q)
    {
        out_ << (q.universal ? "forall " : "exists ") << q.var << " in ";
        term(*q.list, RankAdd);
        out_ << ": ";
        pred(*q.body, 1);
    }

    void term(const TermAst& t, int min_rank)
    {
        bool parens = term_rank(t) < min_rank;
        if (parens)
            out_ << "(";
        std::visit([this](const auto& node) { term_node(node); }, t.node);
        if (parens)
            out_ << ")";
    }

    void term_node(const TermAst::Nat& n) { out_ << n.value; }

    void term_node(const TermAst::Dec& d)
    {
        if (!d.lexeme.empty()) {
            out_ << d.lexeme;
            return;
        }
        std::ostringstream tmp;
        tmp << d.value;
        std::string s = tmp.str();
        out_ << s;
        if (s.find('.') == std::string::npos && s.find('e') == std::string::npos)
            out_ << ".0";
    }

    void term_node(const TermAst::BoolLit& b) { out_ << (b.value ? "true" : "false"); }

    void term_node(const TermAst::Text& s) { out_ << '"' << s.value << '"'; }

    void term_node(const TermAst::Var& v) { variable(v.var); }

    void term_node(const TermAst::Comp& c) { comp(*c.comp); }

    void term_node(const TermAst::Defn& d) { defn(*d.defn); }

    void term_node(const TermAst::ListLit& l) { list(l.list); }

    void term_node(const TermAst::Slice& s)
    {
        term(*s.lo, RankAdd);
        out_ << ":";
        term(*s.hi, RankAdd);
    }

    void term_node(const TermAst::Index& i)
    {
        term(*i.base, RankPrimary);
        list(i.index);
    }

    void term_node(const TermAst::Call& c)
    {
        out_ << c.fn << "(";
        bool first = true;
        for (const auto& a : c.args) {
            if (!first)
                out_ << ", ";
            first = false;
            term(*a, 1);
        }
        out_ << ")";
    }

    void term_node(const TermAst::Neg& n)
    {
        out_ << "-";
        term(*n.operand, RankNeg);
    }

    void term_node(const TermAst::Binary& b)
    {
        if (b.op == BinaryOp::Pow) {
            term(*b.lhs, RankIndex);
            out_ << " ^ ";
            term(*b.rhs, RankNeg);
            return;
        }
        int rank = term_rank_of_op(b.op);
        term(*b.lhs, rank);
        out_ << " " << binary_op_text(b.op) << " ";
        term(*b.rhs, rank + 1);
    }

    static int term_rank_of_op(BinaryOp op)
    {
        return op == BinaryOp::Add || op == BinaryOp::Sub ? RankAdd : RankMul;
    }

    void list(const ListAst& l)
    {
        out_ << "[";
        bool first = true;
        for (const auto& item : l.items) {
            if (!first)
                out_ << ", ";
            first = false;
            term(*item.a, RankAdd);
            if (item.kind == ListItemAst::Kind::Splice) {
                out_ << "..";
                term(*item.b, RankAdd);
            } else if (item.kind == ListItemAst::Kind::Range) {
                out_ << ":";
                term(*item.b, RankAdd);
            }
        }
        out_ << "]";
    }

    void variable(const VariableAst& v)
    {
        out_ << v.base;
        for (const auto& idx : v.indices)
            list(idx);
    }

private:
    std::ostringstream out_;
};

} // namespace

std::string print(const SourceFileAst& file)
{
    Printer p;
    p.file(file);
    return p.take();
}

std::string print(const TermAst& term)
{
    Printer p;
    p.term(term, 1);
    return p.take();
}

std::string print(const PredAst& pred)
{
    Printer p;
    p.pred(pred, 1);
    return p.take();
}

std::string print(const ComponentAst& comp)
{
    Printer p;
    p.comp(comp);
    return p.take();
}

std::string print(const DefinitionAst& defn)
{
    Printer p;
    p.defn(defn);
    return p.take();
}

std::string print(const VariableAst& var)
{
    Printer p;
    p.variable(var);
    return p.take();
}

} // namespace treo

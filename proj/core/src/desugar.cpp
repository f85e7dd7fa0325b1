#include "treo/desugar.hpp"

namespace treo {

namespace {

ListAst desugar_list(const ListAst& l);

VariableAst desugar_variable(const VariableAst& v)
{
    VariableAst out;
    out.base = v.base;
    out.span = v.span;
    for (const auto& idx : v.indices)
        out.indices.push_back(desugar_list(idx));
    return out;
}

ListAst desugar_list(const ListAst& l)
{
    ListAst out;
    out.span = l.span;
    for (const auto& item : l.items) {
        ListItemAst it;
        it.kind = item.kind;
        it.a = desugar(item.a);
        if (item.b)
            it.b = desugar(item.b);
        out.items.push_back(std::move(it));
    }
    return out;
}

TermPtr make_term(TermAst::Repr node, Span span)
{
    TermAst t;
    t.node = std::move(node);
    t.span = span;
    return std::make_shared<const TermAst>(std::move(t));
}

PredPtr make_pred(PredAst::Repr node, Span span)
{
    PredAst p;
    p.node = std::move(node);
    p.span = span;
    return std::make_shared<const PredAst>(std::move(p));
}

ComponentPtr make_comp(ComponentAst::Repr node, Span span)
{
    ComponentAst c;
    c.node = std::move(node);
    c.span = span;
    return std::make_shared<const ComponentAst>(std::move(c));
}

} // namespace

TermPtr desugar(const TermPtr& term)
{
    const Span sp = term->span;
    return std::visit(
        [&](const auto& node) -> TermPtr {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, TermAst::Var>) {
                return make_term(TermAst::Var{desugar_variable(node.var)}, sp);
            } else if constexpr (std::is_same_v<T, TermAst::Comp>) {
                return make_term(TermAst::Comp{desugar(node.comp)}, sp);
            } else if constexpr (std::is_same_v<T, TermAst::Defn>) {
                return make_term(TermAst::Defn{desugar(node.defn)}, sp);
            } else if constexpr (std::is_same_v<T, TermAst::ListLit>) {
                return make_term(TermAst::ListLit{desugar_list(node.list)}, sp);
            } else if constexpr (std::is_same_v<T, TermAst::Slice>) {
                return make_term(TermAst::Slice{desugar(node.lo), desugar(node.hi)}, sp);
            } else if constexpr (std::is_same_v<T, TermAst::Index>) {
                return make_term(TermAst::Index{desugar(node.base), desugar_list(node.index)}, sp);
            } else if constexpr (std::is_same_v<T, TermAst::Call>) {
                TermAst::Call call;
                call.fn = node.fn;
                for (const auto& a : node.args)
                    call.args.push_back(desugar(a));
                return make_term(std::move(call), sp);
            } else if constexpr (std::is_same_v<T, TermAst::Neg>) {
                return make_term(TermAst::Neg{desugar(node.operand)}, sp);
            } else if constexpr (std::is_same_v<T, TermAst::Binary>) {
                return make_term(TermAst::Binary{node.op, desugar(node.lhs), desugar(node.rhs)},
                                 sp);
            } else {
                return term; // literal leaves are shared as-is
            }
        },
        term->node);
}

PredPtr desugar(const PredPtr& pred)
{
    const Span sp = pred->span;
    return std::visit(
        [&](const auto& node) -> PredPtr {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, PredAst::Member>) {
                return make_pred(PredAst::Member{desugar_variable(node.var), desugar(node.list)},
                                 sp);
            } else if constexpr (std::is_same_v<T, PredAst::Compare>) {
                return make_pred(PredAst::Compare{node.op, desugar(node.lhs), desugar(node.rhs)},
                                 sp);
            } else if constexpr (std::is_same_v<T, PredAst::Truth>) {
                return make_pred(PredAst::Truth{desugar_variable(node.var)}, sp);
            } else if constexpr (std::is_same_v<T, PredAst::Not>) {
                return make_pred(PredAst::Not{desugar(node.p)}, sp);
            } else if constexpr (std::is_same_v<T, PredAst::And>) {
                return make_pred(PredAst::And{desugar(node.a), desugar(node.b)}, sp);
            } else if constexpr (std::is_same_v<T, PredAst::Or>) {
                return make_pred(PredAst::Or{desugar(node.a), desugar(node.b)}, sp);
            } else if constexpr (std::is_same_v<T, PredAst::Implies>) {
                return make_pred(PredAst::Implies{desugar(node.a), desugar(node.b)}, sp);
            } else if constexpr (std::is_same_v<T, PredAst::Quant>) {
                PredAst::Quant q;
                q.universal = node.universal;
                q.var = node.var;
                q.list = desugar(node.list);
                q.body = desugar(node.body);
                return make_pred(std::move(q), sp);
            } else {
                return pred;
            }
        },
        pred->node);
}

DefnAstPtr desugar(const DefnAstPtr& defn)
{
    if (const auto* v = std::get_if<DefinitionAst::VarRef>(&defn->node)) {
        DefinitionAst d;
        d.span = defn->span;
        d.node = DefinitionAst::VarRef{desugar_variable(v->var)};
        return std::make_shared<const DefinitionAst>(std::move(d));
    }
    const auto& s = std::get<DefinitionAst::Structure>(defn->node);
    DefinitionAst::Structure out;
    if (s.params) {
        out.params.emplace();
        for (const auto& p : *s.params)
            out.params->push_back(desugar_variable(p));
    }
    out.has_nodes = s.has_nodes;
    for (const auto& n : s.nodes) {
        NodeDeclAst nd;
        nd.var = desugar_variable(n.var);
        nd.io = n.io;
        nd.type_tag = n.type_tag;
        out.nodes.push_back(std::move(nd));
    }
    out.body = desugar(s.body);
    DefinitionAst d;
    d.span = defn->span;
    d.node = std::move(out);
    return std::make_shared<const DefinitionAst>(std::move(d));
}

ComponentPtr desugar(const ComponentPtr& comp)
{
    const Span sp = comp->span;
    return std::visit(
        [&](const auto& node) -> ComponentPtr {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ComponentAst::VarRef>) {
                return make_comp(ComponentAst::VarRef{desugar_variable(node.var)}, sp);
            } else if constexpr (std::is_same_v<T, ComponentAst::Atoms>) {
                return comp;
            } else if constexpr (std::is_same_v<T, ComponentAst::Composition>) {
                ComponentAst::Composition out;
                for (const auto& part : node.parts)
                    out.parts.push_back(desugar(part));
                return make_comp(std::move(out), sp);
            } else if constexpr (std::is_same_v<T, ComponentAst::Comprehension>) {
                ComponentAst::Comprehension out;
                for (const auto& part : node.body)
                    out.body.push_back(desugar(part));
                out.pred = desugar(node.pred);
                return make_comp(std::move(out), sp);
            } else if constexpr (std::is_same_v<T, ComponentAst::Instance>) {
                ComponentAst::Instance out;
                out.defn = desugar(node.defn);
                if (node.values) {
                    out.values.emplace();
                    for (const auto& v : *node.values)
                        out.values->push_back(desugar(v));
                }
                for (const auto& a : node.args)
                    out.args.push_back(desugar_variable(a));
                return make_comp(std::move(out), sp);
            } else if constexpr (std::is_same_v<T, ComponentAst::For>) {
                VariableAst var;
                var.base = node.var;
                var.span = sp;
                ComponentAst::Comprehension body;
                body.body.push_back(desugar(node.body));
                body.pred = make_pred(PredAst::Member{std::move(var), desugar(node.list)}, sp);
                return make_comp(std::move(body), sp);
            } else {
                // if chain: each branch keeps its own guard plus the negation
                // of every earlier one
                static_assert(std::is_same_v<T, ComponentAst::If>);
                ComponentAst::Composition out;
                PredPtr seen; // conjunction of negated earlier guards
                for (const auto& b : node.branches) {
                    PredPtr guard;
                    if (b.pred) {
                        PredPtr p = desugar(b.pred);
                        guard = seen ? make_pred(PredAst::And{seen, p}, sp) : p;
                        PredPtr np = make_pred(PredAst::Not{p}, sp);
                        seen = seen ? make_pred(PredAst::And{seen, np}, sp) : np;
                    } else {
                        guard = seen ? seen : make_pred(PredAst::BoolConst{true}, sp);
                    }
                    ComponentAst::Comprehension branch;
                    branch.body.push_back(desugar(b.body));
                    branch.pred = std::move(guard);
                    out.parts.push_back(make_comp(std::move(branch), sp));
                }
                return make_comp(std::move(out), sp);
            }
        },
        comp->node);
}

SourceFileAst desugar(const SourceFileAst& file)
{
    SourceFileAst out;
    out.section = file.section;
    out.imports = file.imports;
    for (const auto& a : file.assignments) {
        AssignmentAst na;
        na.name = a.name;
        na.span = a.span;
        na.defn = desugar(a.defn);
        out.assignments.push_back(std::move(na));
    }
    return out;
}

} // namespace treo

#include "treo/ca_sort.hpp"

#include <map>
#include <memory>
#include <utility>

namespace treo {

namespace {

class CaSort final : public SemanticSort {
public:
    std::string name() const override { return "ca"; }

    Component trivial() const override
    {
        ConstraintAutomaton ca;
        ca.states = {"q0"};
        ca.initial = "q0";
        return wrap(std::move(ca));
    }

    Result<Component> compose(const Component& a, const Component& b) const override
    {
        TREO_TRY(const ConstraintAutomaton* left, unwrap(a));
        TREO_TRY(const ConstraintAutomaton* right, unwrap(b));
        TREO_TRY(auto product, ca_compose(*left, *right));
        return wrap(std::move(product));
    }

    Component substitute(const Component& c, const SubstArg& y, const Name& x) const override
    {
        const auto& ca = automaton_of(c);
        if (y.is_name())
            return wrap(ca_rename(ca, x, y.name()));
        return wrap(ca_instantiate(ca, x, y.value()));
    }

    NameSet support(const Component& c) const override { return automaton_of(c).ports(); }
    NameSet inputs(const Component& c) const override { return automaton_of(c).inputs; }
    NameSet outputs(const Component& c) const override { return automaton_of(c).outputs; }

    Result<Component> from_atom(const AtomAst& atom, const AtomContext& ctx) const override;

    Component make_node(const NameSet& ins, const NameSet& outs, const Name& fallback) const override
    {
        return wrap(ca_node(ins, outs, fallback));
    }

private:
    Component wrap(ConstraintAutomaton ca) const
    {
        return Component(std::make_shared<CaComponent>(std::move(ca)), this);
    }

    Result<const ConstraintAutomaton*> unwrap(const Component& c) const
    {
        const auto* payload = dynamic_cast<const CaComponent*>(&c.payload());
        if (payload == nullptr)
            return make_error(ErrorKind::Internal, "component is not an automaton");
        return &payload->automaton();
    }
};

Result<Component> CaSort::from_atom(const AtomAst& atom, const AtomContext& ctx) const
{
    const auto* body = std::get_if<AtomAst::Automaton>(&atom.node);
    if (body == nullptr)
        return make_error(ErrorKind::Atom, "opaque atom has no automaton semantics", atom.span);
    if (body->transitions.empty())
        return make_error(ErrorKind::Atom, "automaton atom needs at least one transition",
                          atom.span);

    ConstraintAutomaton ca;
    std::map<std::string, Name> declared;
    for (const auto& decl : ctx.ports) {
        if (!decl.var.indices.empty())
            return make_error(ErrorKind::Atom,
                              "atom interface port '" + decl.var.base + "' must be a plain name",
                              decl.var.span);
        Name port(decl.var.base);
        if (!declared.emplace(decl.var.base, port).second)
            return make_error(ErrorKind::DuplicateName,
                              "port '" + decl.var.base + "' is declared twice", decl.var.span);
        switch (decl.io) {
        case IoMarker::Input:
            ca.inputs.insert(port);
            break;
        case IoMarker::Output:
            ca.outputs.insert(port);
            break;
        case IoMarker::Mixed:
            ca.inputs.insert(port);
            ca.outputs.insert(port);
            break;
        case IoMarker::None:
            return make_error(ErrorKind::Atom,
                              "port '" + decl.var.base + "' needs a direction marker (? or !)",
                              decl.var.span);
        }
    }

    auto ensure_cell = [&](const std::string& cell) {
        if (ca.find_cell(cell) == nullptr)
            ca.memory.push_back({cell, Value()});
    };

    auto classify = [&](const GuardTermAst& g, const NameSet& sync) -> Result<CaTerm> {
        switch (g.kind) {
        case GuardTermAst::Kind::Ident: {
            auto it = declared.find(g.ident);
            if (it != declared.end()) {
                if (!sync.count(it->second))
                    return make_error(ErrorKind::Atom,
                                      "guard mentions port '" + g.ident +
                                          "' outside the transition's synchronisation set",
                                      g.span);
                return CaTerm(CaPort{it->second});
            }
            ensure_cell(g.ident);
            return CaTerm(CaMemPre{g.ident});
        }
        case GuardTermAst::Kind::PrimedIdent:
            ensure_cell(g.ident);
            return CaTerm(CaMemPost{g.ident});
        case GuardTermAst::Kind::Int:
            return CaTerm(Value(g.int_value));
        case GuardTermAst::Kind::Text:
            return CaTerm(Value(g.text_value));
        case GuardTermAst::Kind::Bool:
            return CaTerm(Value(g.bool_value));
        }
        return make_error(ErrorKind::Internal, "unhandled guard term", g.span);
    };

    auto add_state = [&](const std::string& q) {
        if (!ca.has_state(q))
            ca.states.push_back(q);
    };

    for (const auto& t : body->transitions) {
        add_state(t.from);
        add_state(t.to);
        CaTransition out;
        out.from = t.from;
        out.to = t.to;
        if (t.sync.empty())
            return make_error(ErrorKind::Atom, "transition has an empty synchronisation set",
                              t.span);
        for (const auto& ident : t.sync) {
            auto it = declared.find(ident);
            if (it == declared.end())
                return make_error(ErrorKind::Atom, "undeclared port '" + ident + "'", t.span);
            out.sync.insert(it->second);
        }
        for (const auto& eq : t.guard) {
            TREO_TRY(CaTerm lhs, classify(eq.lhs, out.sync));
            TREO_TRY(CaTerm rhs, classify(eq.rhs, out.sync));
            out.guard.push_back(CaEquality{std::move(lhs), std::move(rhs)});
        }
        ca.transitions.push_back(std::move(out));
    }

    ca.initial = body->start.value_or(body->transitions.front().from);
    if (!ca.has_state(ca.initial))
        return make_error(ErrorKind::Atom, "start state '" + ca.initial + "' names no transition endpoint",
                          atom.span);

    if (ctx.params.size() > ca.memory.size())
        return make_error(ErrorKind::Arity,
                          "atom has " + std::to_string(ca.memory.size()) + " memory cell" +
                              (ca.memory.size() == 1 ? "" : "s") + " but got " +
                              std::to_string(ctx.params.size()) + " parameter values",
                          atom.span);
    for (size_t i = 0; i < ctx.params.size(); ++i)
        ca.memory[i].init = ctx.params[i];

    if (auto problem = validate(ca))
        return make_error(ErrorKind::Internal, "malformed atom automaton: " + *problem, atom.span);
    return wrap(std::move(ca));
}

const CaSort& instance()
{
    static CaSort sort;
    return sort;
}

} // namespace

const SemanticSort& ca_sort() { return instance(); }

Component wrap_automaton(ConstraintAutomaton ca)
{
    return Component(std::make_shared<CaComponent>(std::move(ca)), &instance());
}

} // namespace treo

#include "treo/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <utility>

namespace treo {

bool operator==(const CaPort& a, const CaPort& b) { return a.name == b.name; }
bool operator==(const CaMemPre& a, const CaMemPre& b) { return a.cell == b.cell; }
bool operator==(const CaMemPost& a, const CaMemPost& b) { return a.cell == b.cell; }
bool operator==(const CaEquality& a, const CaEquality& b) { return a.lhs == b.lhs && a.rhs == b.rhs; }

bool operator==(const CaTransition& a, const CaTransition& b)
{
    return a.from == b.from && a.sync == b.sync && a.guard == b.guard && a.to == b.to;
}

bool operator==(const MemoryCell& a, const MemoryCell& b)
{
    return a.name == b.name && a.init == b.init;
}

bool operator==(const ConstraintAutomaton& a, const ConstraintAutomaton& b)
{
    return a.states == b.states && a.initial == b.initial && a.inputs == b.inputs &&
           a.outputs == b.outputs && a.memory == b.memory && a.transitions == b.transitions;
}

NameSet ConstraintAutomaton::ports() const
{
    NameSet out = inputs;
    out.insert(outputs.begin(), outputs.end());
    return out;
}

NameSet ConstraintAutomaton::boundary_inputs() const
{
    NameSet out;
    for (const auto& p : inputs)
        if (!outputs.count(p))
            out.insert(p);
    return out;
}

NameSet ConstraintAutomaton::boundary_outputs() const
{
    NameSet out;
    for (const auto& p : outputs)
        if (!inputs.count(p))
            out.insert(p);
    return out;
}

bool ConstraintAutomaton::has_state(const std::string& q) const
{
    return std::find(states.begin(), states.end(), q) != states.end();
}

const MemoryCell* ConstraintAutomaton::find_cell(const std::string& name) const
{
    for (const auto& cell : memory)
        if (cell.name == name)
            return &cell;
    return nullptr;
}

std::optional<std::string> validate(const ConstraintAutomaton& ca)
{
    if (ca.states.empty())
        return "automaton has no states";
    {
        std::set<std::string> seen;
        for (const auto& q : ca.states)
            if (!seen.insert(q).second)
                return "duplicate state '" + q + "'";
    }
    if (!ca.has_state(ca.initial))
        return "initial state '" + ca.initial + "' is not a state";
    {
        std::set<std::string> seen;
        for (const auto& cell : ca.memory)
            if (!seen.insert(cell.name).second)
                return "duplicate memory cell '" + cell.name + "'";
    }
    NameSet allPorts = ca.ports();
    for (const auto& t : ca.transitions) {
        if (!ca.has_state(t.from))
            return "transition source '" + t.from + "' is not a state";
        if (!ca.has_state(t.to))
            return "transition target '" + t.to + "' is not a state";
        if (t.sync.empty())
            return "transition from '" + t.from + "' has an empty synchronisation set";
        for (const auto& p : t.sync)
            if (!allPorts.count(p))
                return "synchronised name '" + to_string(p) + "' is not a port";
        for (const auto& eq : t.guard) {
            for (const CaTerm* side : {&eq.lhs, &eq.rhs}) {
                if (const auto* port = std::get_if<CaPort>(side)) {
                    if (!t.sync.count(port->name))
                        return "guard mentions port '" + to_string(port->name) +
                               "' outside the transition's synchronisation set";
                } else if (const auto* pre = std::get_if<CaMemPre>(side)) {
                    if (!ca.find_cell(pre->cell))
                        return "guard mentions unknown memory cell '" + pre->cell + "'";
                } else if (const auto* post = std::get_if<CaMemPost>(side)) {
                    if (!ca.find_cell(post->cell))
                        return "guard mentions unknown memory cell '" + post->cell + "'";
                }
            }
        }
    }
    return std::nullopt;
}

std::string to_string(const CaTerm& t)
{
    if (const auto* port = std::get_if<CaPort>(&t))
        return to_string(port->name);
    if (const auto* pre = std::get_if<CaMemPre>(&t))
        return pre->cell;
    if (const auto* post = std::get_if<CaMemPost>(&t))
        return post->cell + "'";
    return to_string(std::get<Value>(t));
}

static std::string to_string(const CaTransition& t)
{
    std::string out = t.from + " -{";
    bool first = true;
    for (const auto& p : t.sync) {
        if (!first)
            out += ", ";
        first = false;
        out += to_string(p);
    }
    out += "}";
    for (const auto& eq : t.guard)
        out += ", " + to_string(eq.lhs) + " = " + to_string(eq.rhs);
    out += " -> " + t.to + ";";
    return out;
}

std::string to_string(const ConstraintAutomaton& ca)
{
    std::string out;
    out += "ports";
    bool first = true;
    for (const auto& p : ca.ports()) {
        out += first ? " " : ", ";
        first = false;
        out += to_string(p);
        bool in = ca.inputs.count(p) > 0;
        bool outp = ca.outputs.count(p) > 0;
        out += in && outp ? ":" : (in ? "?" : "!");
    }
    out += ";\n";
    for (const auto& cell : ca.memory)
        out += "memory " + cell.name + " = " + to_string(cell.init) + ";\n";
    out += "start " + ca.initial + ";\n";
    for (const auto& t : ca.transitions)
        out += to_string(t) + "\n";
    return out;
}

bool CaComponent::equals(const ComponentBase& other) const
{
    const auto* rhs = dynamic_cast<const CaComponent*>(&other);
    return rhs != nullptr && ca_ == rhs->ca_;
}

std::string CaComponent::describe() const
{
    return "automaton(" + std::to_string(ca_.states.size()) + " states, " +
           std::to_string(ca_.ports().size()) + " ports, " +
           std::to_string(ca_.transitions.size()) + " transitions)";
}

const ConstraintAutomaton& automaton_of(const Component& c)
{
    return dynamic_cast<const CaComponent&>(c.payload()).automaton();
}

namespace {

NameSet set_intersect(const NameSet& a, const NameSet& b)
{
    NameSet out;
    for (const auto& x : a)
        if (b.count(x))
            out.insert(x);
    return out;
}

// Renames the right operand's clashing cells before a product is formed:
// "c" becomes "1.c", then "2.c" and so on until the name is free on both
// sides. Dots keep the prefixed names out of reach of atom-level guards.
std::map<std::string, std::string> disambiguate_cells(const std::vector<MemoryCell>& left,
                                                      std::vector<MemoryCell>& right)
{
    std::set<std::string> taken;
    for (const auto& cell : left)
        taken.insert(cell.name);
    for (const auto& cell : right)
        taken.insert(cell.name);

    std::map<std::string, std::string> renames;
    for (auto& cell : right) {
        bool clash = false;
        for (const auto& l : left)
            if (l.name == cell.name)
                clash = true;
        if (!clash)
            continue;
        for (uint64_t n = 1;; ++n) {
            std::string candidate = std::to_string(n) + "." + cell.name;
            if (!taken.count(candidate)) {
                renames[cell.name] = candidate;
                taken.insert(candidate);
                cell.name = candidate;
                break;
            }
        }
    }
    return renames;
}

std::vector<CaEquality> rename_cells(std::vector<CaEquality> guard,
                                     const std::map<std::string, std::string>& renames)
{
    if (renames.empty())
        return guard;
    auto fix = [&](CaTerm& t) {
        if (auto* pre = std::get_if<CaMemPre>(&t)) {
            auto it = renames.find(pre->cell);
            if (it != renames.end())
                pre->cell = it->second;
        } else if (auto* post = std::get_if<CaMemPost>(&t)) {
            auto it = renames.find(post->cell);
            if (it != renames.end())
                post->cell = it->second;
        }
    };
    for (auto& eq : guard) {
        fix(eq.lhs);
        fix(eq.rhs);
    }
    return guard;
}

std::string transition_key(const CaTransition& t) { return to_string(t); }

} // namespace

Result<ConstraintAutomaton> ca_compose(const ConstraintAutomaton& a, const ConstraintAutomaton& b,
                                       const CaComposeOptions& opts)
{
    NameSet shared = set_intersect(a.ports(), b.ports());
    for (const auto& x : shared) {
        bool aReads = a.boundary_inputs().count(x) > 0;
        bool aWrites = a.boundary_outputs().count(x) > 0;
        bool bReads = b.boundary_inputs().count(x) > 0;
        bool bWrites = b.boundary_outputs().count(x) > 0;
        if (!aReads && !aWrites)
            return make_error(ErrorKind::NotWellFormed,
                              "port '" + to_string(x) + "' is already connected");
        if (!bReads && !bWrites)
            return make_error(ErrorKind::NotWellFormed,
                              "port '" + to_string(x) + "' is already connected");
        if (aReads && bReads)
            return make_error(ErrorKind::NotWellFormed,
                              "port '" + to_string(x) + "' is read by both operands");
        if (aWrites && bWrites)
            return make_error(ErrorKind::NotWellFormed,
                              "port '" + to_string(x) + "' is written by both operands");
    }

    ConstraintAutomaton out;
    out.inputs = a.inputs;
    out.inputs.insert(b.inputs.begin(), b.inputs.end());
    out.outputs = a.outputs;
    out.outputs.insert(b.outputs.begin(), b.outputs.end());

    out.memory = a.memory;
    std::vector<MemoryCell> rightCells = b.memory;
    auto cellRenames = disambiguate_cells(a.memory, rightCells);
    out.memory.insert(out.memory.end(), rightCells.begin(), rightCells.end());

    auto joint_name = [](const std::string& qa, const std::string& qb) { return qa + "|" + qb; };

    std::map<std::pair<std::string, std::string>, bool> seen;
    std::deque<std::pair<std::string, std::string>> frontier;
    std::set<std::string> emitted;

    auto visit = [&](const std::string& qa, const std::string& qb) {
        auto key = std::make_pair(qa, qb);
        if (seen.count(key))
            return;
        seen[key] = true;
        out.states.push_back(joint_name(qa, qb));
        frontier.push_back(key);
    };

    visit(a.initial, b.initial);
    out.initial = joint_name(a.initial, b.initial);

    auto push_transition = [&](CaTransition t) {
        std::string key = transition_key(t);
        if (emitted.insert(key).second)
            out.transitions.push_back(std::move(t));
    };

    while (!frontier.empty()) {
        if (out.states.size() > opts.state_cap)
            return make_error(ErrorKind::Unsupported,
                              "product exceeds the state cap of " + std::to_string(opts.state_cap));
        auto [qa, qb] = frontier.front();
        frontier.pop_front();

        for (const auto& ta : a.transitions) {
            if (ta.from != qa)
                continue;
            NameSet taShared = set_intersect(ta.sync, shared);
            if (taShared.empty()) {
                visit(ta.to, qb);
                push_transition({joint_name(qa, qb), ta.sync, ta.guard, joint_name(ta.to, qb)});
            }
            for (const auto& tb : b.transitions) {
                if (tb.from != qb)
                    continue;
                NameSet tbShared = set_intersect(tb.sync, shared);
                if (taShared != tbShared)
                    continue;
                NameSet sync = ta.sync;
                sync.insert(tb.sync.begin(), tb.sync.end());
                std::vector<CaEquality> guard = ta.guard;
                auto rightGuard = rename_cells(tb.guard, cellRenames);
                guard.insert(guard.end(), rightGuard.begin(), rightGuard.end());
                visit(ta.to, tb.to);
                push_transition({joint_name(qa, qb), std::move(sync), std::move(guard),
                                 joint_name(ta.to, tb.to)});
            }
        }
        for (const auto& tb : b.transitions) {
            if (tb.from != qb)
                continue;
            if (!set_intersect(tb.sync, shared).empty())
                continue;
            visit(qa, tb.to);
            push_transition({joint_name(qa, qb), tb.sync, rename_cells(tb.guard, cellRenames),
                             joint_name(qa, tb.to)});
        }
    }

    return out;
}

ConstraintAutomaton ca_rename(ConstraintAutomaton ca, const Name& from, const Name& to)
{
    if (from == to)
        return ca;
    auto renameSet = [&](NameSet& s) {
        if (s.erase(from))
            s.insert(to);
    };
    renameSet(ca.inputs);
    renameSet(ca.outputs);
    for (auto& t : ca.transitions) {
        renameSet(t.sync);
        for (auto& eq : t.guard)
            for (CaTerm* side : {&eq.lhs, &eq.rhs})
                if (auto* port = std::get_if<CaPort>(side); port && port->name == from)
                    port->name = to;
    }
    return ca;
}

ConstraintAutomaton ca_instantiate(ConstraintAutomaton ca, const Name& port, const Value& v)
{
    bool present = ca.inputs.count(port) || ca.outputs.count(port);
    if (!present)
        return ca;
    ca.inputs.erase(port);
    ca.outputs.erase(port);
    for (auto& t : ca.transitions) {
        if (!t.sync.erase(port))
            continue;
        t.guard.push_back(CaEquality{CaPort{port}, v});
    }
    return ca;
}

ConstraintAutomaton ca_node(const NameSet& ins, const NameSet& outs, const Name& fallback)
{
    NameSet i = ins.empty() ? NameSet{fallback} : ins;
    NameSet o = outs.empty() ? NameSet{fallback} : outs;

    ConstraintAutomaton ca;
    ca.states = {"n"};
    ca.initial = "n";
    ca.inputs = i;
    ca.outputs = o;
    for (const auto& in : i) {
        CaTransition t;
        t.from = "n";
        t.sync = o;
        t.sync.insert(in);
        for (const auto& out : o)
            if (!(out == in))
                t.guard.push_back(CaEquality{CaPort{out}, CaPort{in}});
        t.to = "n";
        ca.transitions.push_back(std::move(t));
    }
    return ca;
}

} // namespace treo

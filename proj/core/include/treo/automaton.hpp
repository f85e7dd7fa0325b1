#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "treo/component.hpp"
#include "treo/error.hpp"
#include "treo/name.hpp"
#include "treo/value.hpp"

namespace treo {

// One side of a guard equality.
struct CaPort {
    Name name;
};
struct CaMemPre {
    std::string cell;
};
struct CaMemPost {
    std::string cell;
};
using CaTerm = std::variant<CaPort, CaMemPre, CaMemPost, Value>;

bool operator==(const CaPort& a, const CaPort& b);
bool operator==(const CaMemPre& a, const CaMemPre& b);
bool operator==(const CaMemPost& a, const CaMemPost& b);

struct CaEquality {
    CaTerm lhs;
    CaTerm rhs;
};
bool operator==(const CaEquality& a, const CaEquality& b);

struct CaTransition {
    std::string from;
    NameSet sync;
    std::vector<CaEquality> guard; // conjunction; empty means true
    std::string to;
};
bool operator==(const CaTransition& a, const CaTransition& b);

struct MemoryCell {
    std::string name;
    Value init;
};
bool operator==(const MemoryCell& a, const MemoryCell& b);

// Constraint automaton with memory. A port may appear in both direction
// sets; such mixed ports arise from composition and are internal, so the
// boundary splits as inputs-only / outputs-only.
struct ConstraintAutomaton {
    std::vector<std::string> states;
    std::string initial;
    NameSet inputs;
    NameSet outputs;
    std::vector<MemoryCell> memory;
    std::vector<CaTransition> transitions;

    NameSet ports() const;
    NameSet boundary_inputs() const;
    NameSet boundary_outputs() const;
    bool has_state(const std::string& q) const;
    const MemoryCell* find_cell(const std::string& name) const;
};
bool operator==(const ConstraintAutomaton& a, const ConstraintAutomaton& b);

// Structural checks: initial and transition endpoints are listed states,
// sync sets draw from the declared ports, guards mention only synchronised
// ports and declared cells. Returns the first problem found.
std::optional<std::string> validate(const ConstraintAutomaton& ca);

std::string to_string(const CaTerm& t);
std::string to_string(const ConstraintAutomaton& ca);

// Component payload for automata.
class CaComponent : public ComponentBase {
public:
    explicit CaComponent(ConstraintAutomaton ca) : ca_(std::move(ca)) {}

    const ConstraintAutomaton& automaton() const { return ca_; }
    bool equals(const ComponentBase& other) const override;
    std::string describe() const override;

private:
    ConstraintAutomaton ca_;
};

const ConstraintAutomaton& automaton_of(const Component& c);

struct CaComposeOptions {
    std::size_t state_cap = 1000000;
};

Result<ConstraintAutomaton> ca_compose(const ConstraintAutomaton& a, const ConstraintAutomaton& b,
                                       const CaComposeOptions& opts = {});
ConstraintAutomaton ca_rename(ConstraintAutomaton ca, const Name& from, const Name& to);
ConstraintAutomaton ca_instantiate(ConstraintAutomaton ca, const Name& port, const Value& v);
ConstraintAutomaton ca_node(const NameSet& ins, const NameSet& outs, const Name& fallback);

} // namespace treo

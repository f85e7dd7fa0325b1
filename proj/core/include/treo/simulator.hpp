#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "treo/automaton.hpp"
#include "treo/error.hpp"
#include "treo/io_sort.hpp"

namespace treo {

// Run state of one automaton: the control state plus a valuation of every
// memory cell. Cells start at their declared initial values and persist
// until a transition constrains their post-value to something concrete.
struct Configuration {
    std::string state;
    std::map<std::string, Value> memory;
};

Configuration initial_configuration(const ConstraintAutomaton& ca);

// One step of an environment script: data offered at boundary inputs (an
// offer may be dataless, a bare token) and the boundary outputs the
// environment is willing to accept from.
struct ScriptStep {
    std::map<Name, std::optional<Value>> offers;
    NameSet ready;
};

// Line format, one step per line:
//
//   offers: a1 = 1, a2 = 2 ; ready: b1
//
// Either section may be omitted or left empty. Data are integer or quoted
// text literals; an offer without '=' is a dataless token. '#' starts a
// comment and blank lines are skipped.
Result<std::vector<ScriptStep>> parse_script(const std::string& text);

// What a fired transition looked like: its synchronisation set, the data
// solved for ports (only ports whose value the guard determines appear), and
// the state reached.
struct Firing {
    NameSet sync;
    std::vector<std::pair<Name, Value>> data;
    std::string state;
};

using SimRng = std::mt19937_64;

// Advances the configuration by at most one transition. A transition from
// the current state is enabled when every synchronised boundary input is
// offered, every synchronised boundary output is marked ready, and the guard
// is satisfiable given the offered data and the memory pre-values. An
// unsatisfiable guard merely disables the transition. Among the enabled
// transitions one fires uniformly at random; if none is enabled the
// configuration is left unchanged and no firing is reported. Offering at a
// name that is not a boundary input (or readying a non-output) is an error.
Result<std::optional<Firing>> simulate_step(Configuration& config,
                                            const ConstraintAutomaton& ca,
                                            const std::map<Name, std::optional<Value>>& offers,
                                            const NameSet& ready, SimRng& rng);

struct TraceStep {
    size_t step = 0;
    bool fired = false;
    std::string state;
    NameSet sync;
    std::vector<std::pair<Name, Value>> data;
    // Synchronised boundary ports with their solved data, if any.
    std::vector<std::pair<Name, std::optional<Value>>> boundary;
};

struct Trace {
    uint64_t seed = 0;
    std::vector<TraceStep> steps;
};

// The product of a flattened composition's elements. The cap bounds the
// product's state count.
Result<ConstraintAutomaton> product_of(const Component& flattened,
                                       const CaComposeOptions& opts = {});

// Runs the automaton for the given number of steps, pairing each step with
// the corresponding script step (past the end of the script the environment
// offers nothing and accepts nothing). Every step is recorded, idle ones
// included.
Result<Trace> run_automaton(const ConstraintAutomaton& ca,
                            const std::vector<ScriptStep>& script, size_t steps,
                            uint64_t seed);

Result<Trace> run_simulation(const Component& flattened,
                             const std::vector<ScriptStep>& script, size_t steps,
                             uint64_t seed, const CaComposeOptions& opts = {});

// Line-delimited rendering: a seed header, then one record per step.
std::string render_trace(const Trace& trace);

} // namespace treo

#pragma once

#include "treo/automaton.hpp"
#include "treo/sort.hpp"

namespace treo {

// The built-in sort: components are constraint automata with memory.
const SemanticSort& ca_sort();

// Wraps a raw automaton as a component of the ca sort.
Component wrap_automaton(ConstraintAutomaton ca);

} // namespace treo

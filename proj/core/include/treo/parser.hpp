#pragma once

#include <string>

#include "treo/ast.hpp"

namespace treo {

// Parses a whole source buffer: section? import* assignment* to end of input.
// Throws SyntaxError on the first offending token.
SourceFileAst parse_file(const std::string& source);

// Entry points for single fragments, used by tests.
ComponentPtr parse_component(const std::string& source);
TermPtr parse_term(const std::string& source);
PredPtr parse_predicate(const std::string& source);

} // namespace treo

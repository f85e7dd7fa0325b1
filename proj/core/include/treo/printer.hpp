#pragma once

#include <string>

#include "treo/ast.hpp"

namespace treo {

// Canonical source rendering. Printing then reparsing yields an AST that
// prints identically, so string comparison of printed forms doubles as
// structural equality.
std::string print(const SourceFileAst& file);
std::string print(const TermAst& term);
std::string print(const PredAst& pred);
std::string print(const ComponentAst& comp);
std::string print(const DefinitionAst& defn);
std::string print(const VariableAst& var);

inline std::string print(const TermPtr& t) { return print(*t); }
inline std::string print(const PredPtr& p) { return print(*p); }
inline std::string print(const ComponentPtr& c) { return print(*c); }
inline std::string print(const DefnAstPtr& d) { return print(*d); }

template <typename T>
bool same_ast(const T& a, const T& b)
{
    return print(a) == print(b);
}

} // namespace treo

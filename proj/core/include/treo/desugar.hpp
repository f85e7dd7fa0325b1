#pragma once

#include "treo/ast.hpp"

namespace treo {

// Rewrites for loops and if chains into comprehensions:
//   for (x in L) C             becomes  { C | x in L }
//   if (p) A else if (q) B ... becomes  { {A | p} {B | not p and q} ... }
// Every other node is rebuilt with desugared children, so a second pass is
// the identity.
SourceFileAst desugar(const SourceFileAst& file);
ComponentPtr desugar(const ComponentPtr& comp);
DefnAstPtr desugar(const DefnAstPtr& defn);
TermPtr desugar(const TermPtr& term);
PredPtr desugar(const PredPtr& pred);

} // namespace treo

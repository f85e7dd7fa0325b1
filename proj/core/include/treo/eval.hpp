#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "treo/ast.hpp"
#include "treo/definition.hpp"
#include "treo/error.hpp"
#include "treo/name.hpp"
#include "treo/scope.hpp"
#include "treo/sort.hpp"
#include "treo/value.hpp"

namespace treo {

struct EvalOptions {
    // Reject any re-entrant instantiation instead of unfolding it.
    bool strict_no_recursion = false;
    // Maximum number of live instantiations of one definition.
    uint64_t recursion_depth = 64;
};

// Shared state of one evaluation: the sort components are built in, the
// supply of hidden names, collected warnings, and the instantiation stack
// (which also provides the atom context and recursion control).
class EvalContext {
public:
    EvalContext(const SemanticSort& sort, EvalOptions options = {})
        : sort_(sort), options_(options)
    {
    }

    const SemanticSort& sort() const { return sort_; }
    const EvalOptions& options() const { return options_; }
    NameSupply& supply() { return supply_; }

    void warn(std::string message, Span span)
    {
        add({Diagnostic::Severity::Warning, std::move(message), span});
    }
    void note(std::string message, Span span)
    {
        add({Diagnostic::Severity::Note, std::move(message), span});
    }
    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

    struct Frame {
        const DefinitionValue* defn;
        const std::vector<Value>* values;
    };
    std::vector<Frame>& stack() { return stack_; }

private:
    void add(Diagnostic d)
    {
        for (const auto& seen : diagnostics_)
            if (seen.severity == d.severity && seen.message == d.message && seen.span == d.span)
                return;
        diagnostics_.push_back(std::move(d));
    }

    const SemanticSort& sort_;
    EvalOptions options_;
    NameSupply supply_;
    std::vector<Diagnostic> diagnostics_;
    std::vector<Frame> stack_;
};

Result<NameArray> eval_variable(const VariableAst& v, const Scope& scope, EvalContext& ctx);
Result<NameArray> eval_arguments(const std::vector<VariableAst>& args, const Scope& scope,
                                 EvalContext& ctx);
Result<Value> eval_term(const TermAst& t, const Scope& scope, EvalContext& ctx);
Result<Value> eval_list(const ListAst& l, const Scope& scope, EvalContext& ctx);

// Minimal extensions of the query scope satisfying a predicate, ordered
// lexicographically by the values of the newly bound names. `infinite` is
// set (with no scopes) when some variable has no positive membership atom to
// bound it, in which case the comprehension rule falls back to the trivial
// component.
struct Solutions {
    bool infinite = false;
    std::vector<std::string> unbounded; // variables lacking a membership bound
    std::vector<Scope> scopes;
};

Result<Solutions> solve_predicate(const PredAst& p, const Scope& scope, EvalContext& ctx);

Result<Component> eval_component(const ComponentAst& c, const Scope& scope, EvalContext& ctx);
Result<Component> apply_definition(const DefinitionPtr& d, const std::vector<Value>& values,
                                   const NameArray& nodes, EvalContext& ctx);
Result<DefinitionPtr> eval_definition(const DefnAstPtr& d, const Scope& scope, EvalContext& ctx,
                                      std::optional<Name> self = {});

// Maps a dotted module name to the module's evaluated scope.
using ImportResolver = std::function<Result<Scope>(const std::string& module)>;

Result<Scope> eval_file(const SourceFileAst& ast, const Scope& initial, EvalContext& ctx,
                        const ImportResolver& resolver);

} // namespace treo

#pragma once

#include <atomic>
#include <cstdint>
#include <optional>

#include "treo/ast.hpp"
#include "treo/scope.hpp"

namespace treo {

// A component definition closure: the parameter/node declarations and body
// together with the scope they were evaluated in. `self_name` lets the body
// refer back to the definition once an assignment has named it, which is what
// makes recursive instantiation possible (and detectable, for strict mode).
struct DefinitionValue {
    std::string name = "<anonymous>";
    Scope captured;
    std::optional<Name> self_name;
    std::shared_ptr<const DefinitionAst::Structure> source;
    Span span;
    uint64_t uid = next_uid();

    static uint64_t next_uid()
    {
        static std::atomic<uint64_t> counter{0};
        return ++counter;
    }
};

} // namespace treo

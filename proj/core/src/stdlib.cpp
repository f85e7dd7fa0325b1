#include "treo/imports.hpp"

namespace treo {

// Table 1 channels. fifo1 and fifo1full carry data through the buffer cell;
// fifo1full takes the initial datum as its one parameter.
const std::vector<BundledModule>& bundled_stdlib()
{
    static const std::vector<BundledModule> modules = {
        {"sync", "sync(a?,b!) { q -{a,b}, b = a -> q; }\n"},
        {"syncdrain", "syncdrain(a?,b?) { q -{a,b} -> q; }\n"},
        {"fifo1",
         "fifo1(a?,b!) { empty -{a}, m' = a -> full; full -{b}, b = m -> empty; }\n"},
        {"fifo1full",
         "fifo1full<x>(a?,b!) { start full;\n"
         "    empty -{a}, m' = a -> full; full -{b}, b = m -> empty; }\n"},
    };
    return modules;
}

const char* find_bundled(const std::string& module)
{
    for (const auto& m : bundled_stdlib())
        if (module == m.name)
            return m.source;
    return nullptr;
}

} // namespace treo

#pragma once

#include <map>
#include <string>
#include <vector>

#include "treo/eval.hpp"
#include "treo/scope.hpp"

namespace treo {

// A module shipped inside the binary. Bundled modules shadow the search
// paths, so `import sync;` means the same thing everywhere.
struct BundledModule {
    const char* name;
    const char* source;
};

const std::vector<BundledModule>& bundled_stdlib();
const char* find_bundled(const std::string& module);

// Loads modules by dotted name: bundled stdlib first, then the search paths
// in order (dots become directory separators, ".treo" is appended). Each
// module is evaluated once and cached by its canonical path; nested imports
// go through the same loader, which also detects cycles.
class ModuleLoader {
public:
    ModuleLoader(std::vector<std::string> searchPaths, EvalContext& ctx)
        : searchPaths_(std::move(searchPaths)), ctx_(ctx)
    {
    }

    Result<Scope> load(const std::string& module);

    // Binds this loader as an eval_file resolver; the loader must outlive it.
    ImportResolver resolver();

    const std::vector<std::string>& search_paths() const { return searchPaths_; }

private:
    Result<Scope> load_source(const std::string& key, const std::string& module,
                              const std::string& source);

    std::vector<std::string> searchPaths_;
    EvalContext& ctx_;
    std::map<std::string, Scope> cache_;
    std::vector<std::pair<std::string, std::string>> loading_; // (key, module name)
};

// Search paths for a CLI invocation: the entries of the environment list
// (colon-separated, typically TREO_PATH) followed by any -I flags.
std::vector<std::string> split_search_paths(const std::string& envList);

} // namespace treo

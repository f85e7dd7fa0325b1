#include <filesystem>
#include <fstream>
#include <sstream>

#include "treo/desugar.hpp"
#include "treo/imports.hpp"
#include "treo/parser.hpp"

namespace treo {

namespace {

std::string module_relpath(const std::string& module)
{
    std::string rel = module;
    for (char& c : rel)
        if (c == '.')
            c = '/';
    return rel + ".treo";
}

std::string cycle_chain(const std::vector<std::pair<std::string, std::string>>& loading,
                        const std::string& offenderKey, const std::string& offenderName)
{
    std::string chain;
    bool inCycle = false;
    for (const auto& [key, name] : loading) {
        if (key == offenderKey)
            inCycle = true;
        if (!inCycle)
            continue;
        chain += name + " -> ";
    }
    return chain + offenderName;
}

} // namespace

std::vector<std::string> split_search_paths(const std::string& envList)
{
    std::vector<std::string> out;
    std::string part;
    std::istringstream in(envList);
    while (std::getline(in, part, ':'))
        if (!part.empty())
            out.push_back(part);
    return out;
}

ImportResolver ModuleLoader::resolver()
{
    return [this](const std::string& module) { return load(module); };
}

Result<Scope> ModuleLoader::load(const std::string& module)
{
    if (const char* source = find_bundled(module))
        return load_source("stdlib:" + module, module, source);

    const std::string rel = module_relpath(module);
    for (const auto& dir : searchPaths_) {
        std::filesystem::path candidate = std::filesystem::path(dir) / rel;
        std::error_code ec;
        if (!std::filesystem::is_regular_file(candidate, ec))
            continue;
        std::filesystem::path canon = std::filesystem::weakly_canonical(candidate, ec);
        if (ec)
            canon = candidate;

        std::ifstream in(candidate, std::ios::binary);
        if (!in)
            return make_error(ErrorKind::Import,
                              "cannot read module '" + module + "' at " + candidate.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        return load_source(canon.string(), module, buf.str());
    }

    std::string searched = "bundled stdlib";
    for (const auto& dir : searchPaths_)
        searched += ", " + dir;
    return make_error(ErrorKind::Import,
                      "module '" + module + "' not found (searched: " + searched + ")");
}

Result<Scope> ModuleLoader::load_source(const std::string& key, const std::string& module,
                                        const std::string& source)
{
    if (auto it = cache_.find(key); it != cache_.end())
        return it->second;
    for (const auto& [activeKey, activeName] : loading_)
        if (activeKey == key)
            return make_error(ErrorKind::ImportCycle,
                              "import cycle: " + cycle_chain(loading_, key, module));

    SourceFileAst ast;
    try {
        ast = desugar(parse_file(source));
    } catch (const SyntaxError& e) {
        return make_error(ErrorKind::Import,
                          "syntax error in module '" + module + "': " + e.what(), e.span);
    }

    loading_.push_back({key, module});
    auto r = eval_file(ast, Scope{}, ctx_, resolver());
    loading_.pop_back();
    if (!r.ok())
        return r;
    cache_.emplace(key, r.value());
    return r;
}

} // namespace treo

#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "treo/ast.hpp"
#include "treo/parser.hpp"

namespace treo::testing {

// First assignment's definition body, for feeding atoms to a sort directly.
inline const DefinitionAst::Structure& parse_structure(const std::string& source,
                                                       SourceFileAst& keepAlive)
{
    keepAlive = parse_file(source);
    if (keepAlive.assignments.empty())
        throw std::runtime_error("no assignments in source");
    const auto& defn = *keepAlive.assignments.front().defn;
    return std::get<DefinitionAst::Structure>(defn.node);
}

inline const AtomAst& first_atom(const DefinitionAst::Structure& s)
{
    const auto& atoms = std::get<ComponentAst::Atoms>(s.body->node);
    return atoms.atoms.front();
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::string fixture(const std::string& rel)
{
    return read_file(std::string(TREO_FIXTURES_DIR) + "/" + rel);
}

inline std::vector<std::string> corpus_files()
{
    return {
        "corpus/alternator2.treo",
        "corpus/fifo1_ca.treo",
        "corpus/fifo1_opaque.treo",
        "corpus/alternator_k.treo",
        "corpus/recursive_alternator.treo",
        "corpus/team.treo",
        "corpus/match.treo",
    };
}

} // namespace treo::testing

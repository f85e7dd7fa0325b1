#include "treo/sort.hpp"

#include "treo/ca_sort.hpp"

namespace treo {

Component simultaneous_substitute(const SemanticSort& sort, Component c,
                                  const std::vector<std::pair<Name, SubstArg>>& binds)
{
    if (binds.empty())
        return c;

    // Names that must not be shadowed by the intermediate step.
    NameSet used = sort.support(c);
    NameSet nameTargets;
    for (const auto& [x, y] : binds) {
        used.insert(x);
        if (y.is_name()) {
            used.insert(y.name());
            nameTargets.insert(y.name());
        }
    }

    // A source that some other bind renames onto must move aside before that
    // rename lands; chains like [b/a, c/b] therefore act on the original
    // ports only. Every other source is substituted in place, which keeps
    // its own name out of the result (value bindings stay readable).
    std::vector<std::pair<Name, const SubstArg*>> temps;
    uint64_t next = 0;
    for (const auto& [x, y] : binds) {
        if (!nameTargets.count(x))
            continue;
        Name temp;
        do {
            temp = Name("$swap", {next++});
        } while (used.count(temp));
        c = sort.substitute(c, SubstArg(temp), x);
        temps.push_back({std::move(temp), &y});
    }
    for (const auto& [x, y] : binds)
        if (!nameTargets.count(x))
            c = sort.substitute(c, y, x);
    for (const auto& [temp, y] : temps)
        c = sort.substitute(c, *y, temp);
    return c;
}

void SortRegistry::add(const SemanticSort* sort) { sorts_[sort->name()] = sort; }

const SemanticSort* SortRegistry::find(const std::string& name) const
{
    auto it = sorts_.find(name);
    return it == sorts_.end() ? nullptr : it->second;
}

std::vector<std::string> SortRegistry::names() const
{
    std::vector<std::string> out;
    for (const auto& [name, sort] : sorts_)
        out.push_back(name);
    return out;
}

SortRegistry& global_sorts()
{
    static SortRegistry registry = [] {
        SortRegistry r;
        r.add(&ca_sort());
        return r;
    }();
    return registry;
}

} // namespace treo

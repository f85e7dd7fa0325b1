#include "treo/name.hpp"

namespace treo {

std::string to_string(const Name& n)
{
    std::string out = n.base;
    for (uint64_t s : n.subs) {
        out += '.';
        out += std::to_string(s);
    }
    return out;
}

std::string to_string(const NameArray& a)
{
    if (a.is_atom())
        return to_string(a.atom());
    std::string out = "[";
    bool first = true;
    for (const auto& e : a.list()) {
        if (!first)
            out += ", ";
        first = false;
        out += to_string(e);
    }
    out += "]";
    return out;
}

void flatten_names(const NameArray& a, std::vector<Name>& out)
{
    if (a.is_atom()) {
        out.push_back(a.atom());
        return;
    }
    for (const auto& e : a.list())
        flatten_names(e, out);
}

std::vector<Name> flatten_names(const NameArray& a)
{
    std::vector<Name> out;
    flatten_names(a, out);
    return out;
}

Name NameSupply::fresh(const Name& hint, const NameSet& used)
{
    const std::string stem = "$" + to_string(hint);
    uint64_t& counter = counters_[stem];
    Name candidate;
    do {
        ++counter;
        candidate = Name{stem, {counter}};
    } while (used.count(candidate) != 0);
    emitted_.push_back(candidate);
    return candidate;
}

} // namespace treo

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace treo {

// A node name: a dotted identifier plus a chain of natural subscripts.
// Subscripting is how indexed node sets are realised: a[1] names a.1, and
// names stay closed under further subscripting (a.1.2 and so on). Subscripts
// render with a dot, which puts them out of reach of surface identifiers
// (identifier segments cannot start with a digit).
struct Name {
    std::string base;
    std::vector<uint64_t> subs;

    Name() = default;
    explicit Name(std::string b) : base(std::move(b)) {}
    Name(std::string b, std::vector<uint64_t> s) : base(std::move(b)), subs(std::move(s)) {}

    Name subscript(uint64_t i) const
    {
        Name out = *this;
        out.subs.push_back(i);
        return out;
    }

    bool operator==(const Name&) const = default;
    auto operator<=>(const Name&) const = default;
};

std::string to_string(const Name& n);

using NameSet = std::set<Name>;

// Ragged array over names; the atom case is a single name.
class NameArray {
public:
    using List = std::vector<NameArray>;

    NameArray() : v_(Name{}) {}
    NameArray(Name n) : v_(std::move(n)) {}
    NameArray(List xs) : v_(std::move(xs)) {}

    bool is_atom() const { return std::holds_alternative<Name>(v_); }
    bool is_list() const { return !is_atom(); }

    const Name& atom() const { return std::get<Name>(v_); }
    const List& list() const { return std::get<List>(v_); }
    List& list() { return std::get<List>(v_); }

    size_t len() const { return is_atom() ? 0 : list().size(); }

    bool operator==(const NameArray&) const = default;

private:
    std::variant<Name, List> v_;
};

std::string to_string(const NameArray& a);

// Collects every atom in depth-first order.
void flatten_names(const NameArray& a, std::vector<Name>& out);
std::vector<Name> flatten_names(const NameArray& a);

// Source of hidden names. Hidden names are "$" + the hinted name + "." + a
// per-hint counter; the "$" prefix keeps them disjoint from anything a source
// file can spell. A supply is scoped to one compilation, so equal inputs give
// equal outputs across repeated runs.
class NameSupply {
public:
    Name fresh(const Name& hint, const NameSet& used);

    const std::vector<Name>& emitted() const { return emitted_; }

private:
    std::map<std::string, uint64_t> counters_;
    std::vector<Name> emitted_;
};

} // namespace treo

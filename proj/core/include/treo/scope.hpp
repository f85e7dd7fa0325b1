#pragma once

#include <map>
#include <optional>

#include "treo/name.hpp"
#include "treo/value.hpp"

namespace treo {

// Finite partial map from names to values. Scopes are persistent: bind and
// compose return updated copies, so captured scopes never change under a
// closure's feet.
class Scope {
public:
    using Map = std::map<Name, Value>;

    Scope() = default;
    explicit Scope(Map m) : map_(std::move(m)) {}

    bool contains(const Name& n) const { return map_.count(n) != 0; }

    const Value* lookup(const Name& n) const
    {
        auto it = map_.find(n);
        return it == map_.end() ? nullptr : &it->second;
    }

    Scope bind(const Name& n, Value v) const
    {
        Scope out = *this;
        out.map_[n] = std::move(v);
        return out;
    }

    void bind_in_place(const Name& n, Value v) { map_[n] = std::move(v); }

    size_t size() const { return map_.size(); }
    bool empty() const { return map_.empty(); }
    const Map& entries() const { return map_; }

    NameSet domain() const
    {
        NameSet out;
        for (const auto& [k, _] : map_)
            out.insert(k);
        return out;
    }

    bool operator==(const Scope&) const = default;

private:
    Map map_;
};

// Sequential composition: inner entries shadow outer ones.
inline Scope scope_compose(const Scope& outer, const Scope& inner)
{
    Scope out = outer;
    for (const auto& [k, v] : inner.entries())
        out.bind_in_place(k, v);
    return out;
}

} // namespace treo

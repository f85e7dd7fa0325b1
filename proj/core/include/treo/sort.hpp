#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "treo/ast.hpp"
#include "treo/component.hpp"
#include "treo/error.hpp"
#include "treo/name.hpp"
#include "treo/value.hpp"

namespace treo {

// Right-hand side of a substitution C[y/x]: a name renames, a value
// instantiates.
class SubstArg {
public:
    SubstArg(Name n) : v_(std::move(n)) {}
    SubstArg(Value v) : v_(std::move(v)) {}

    bool is_name() const { return std::holds_alternative<Name>(v_); }
    const Name& name() const { return std::get<Name>(v_); }
    const Value& value() const { return std::get<Value>(v_); }

private:
    std::variant<Name, Value> v_;
};

// What a primitive atom block gets to see: the declared interface of its
// definition (with direction markers), the instantiation values, and the
// definition name for diagnostics and manifests.
struct AtomContext {
    std::vector<NodeDeclAst> ports;
    std::vector<Value> params;
    std::string origin;
};

// A semantic sort: a set of components closed under binary composition and
// substitution, with a trivial component for the empty composition. The
// input/output maps split the support, and make_node supplies the
// merge-replicate components inserted by surgery.
class SemanticSort {
public:
    virtual ~SemanticSort() = default;

    virtual std::string name() const = 0;
    virtual Component trivial() const = 0;
    virtual Result<Component> compose(const Component& a, const Component& b) const = 0;
    virtual Component substitute(const Component& c, const SubstArg& y, const Name& x) const = 0;
    virtual NameSet support(const Component& c) const = 0;
    virtual NameSet inputs(const Component& c) const = 0;
    virtual NameSet outputs(const Component& c) const = 0;
    virtual Result<Component> from_atom(const AtomAst& atom, const AtomContext& ctx) const = 0;
    virtual Component make_node(const NameSet& ins, const NameSet& outs, const Name& fallback) const = 0;
};

// Applies every binding as one simultaneous substitution: sources are first
// moved to reserved temporaries, then the temporaries to their targets, so
// overlapping pairs like [b/a, c/b] cannot cascade.
Component simultaneous_substitute(const SemanticSort& sort, Component c,
                                  const std::vector<std::pair<Name, SubstArg>>& binds);

// Known sorts by name. "ca" is always present.
class SortRegistry {
public:
    void add(const SemanticSort* sort);
    const SemanticSort* find(const std::string& name) const;
    std::vector<std::string> names() const;

private:
    std::map<std::string, const SemanticSort*> sorts_;
};

SortRegistry& global_sorts();

} // namespace treo

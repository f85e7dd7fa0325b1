#include "treo/io_sort.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <utility>

namespace treo {

NameSet IoElement::support() const
{
    NameSet out = inputs;
    out.insert(outputs.begin(), outputs.end());
    return out;
}

namespace {

IoElement substitute_element(const SemanticSort& base, IoElement e, const SubstArg& y,
                             const Name& x)
{
    bool present = e.inputs.count(x) || e.outputs.count(x);
    if (!present)
        return e;
    if (y.is_name()) {
        if (e.inputs.erase(x))
            e.inputs.insert(y.name());
        if (e.outputs.erase(x))
            e.outputs.insert(y.name());
    } else {
        e.inputs.erase(x);
        e.outputs.erase(x);
    }
    e.inner = base.substitute(e.inner, y, x);
    return e;
}

bool hidden_name(const Name& n) { return !n.base.empty() && n.base[0] == '$'; }

// Renames hidden names to $0, $1, ... in first-appearance order, so that two
// composites differing only in the choice of hidden names compare equal.
// Hidden names only ever arrive through renaming, which keeps the port sets
// and the inner component in step, so the sets cover every occurrence.
std::vector<IoElement> canonical_elements(std::vector<IoElement> es)
{
    std::map<Name, Name> canon;
    auto visit = [&](const NameSet& names) {
        for (const auto& x : names)
            if (hidden_name(x) && !canon.count(x))
                canon.emplace(x, Name("$" + std::to_string(canon.size())));
    };
    for (const auto& e : es) {
        visit(e.inputs);
        visit(e.outputs);
    }
    for (auto& e : es)
        for (const auto& [x, y] : canon)
            if (e.inner.sort())
                e = substitute_element(*e.inner.sort(), std::move(e), SubstArg(y), x);
    return es;
}

} // namespace

bool IoComposite::equals(const ComponentBase& other) const
{
    const auto* rhs = dynamic_cast<const IoComposite*>(&other);
    if (rhs == nullptr || elements_.size() != rhs->elements_.size())
        return false;
    auto mine = canonical_elements(elements_);
    auto theirs = canonical_elements(rhs->elements_);
    for (size_t i = 0; i < mine.size(); ++i) {
        const auto& a = mine[i];
        const auto& b = theirs[i];
        if (a.kind != b.kind || a.inputs != b.inputs || a.outputs != b.outputs)
            return false;
        if (!a.inner.structurally_equal(b.inner))
            return false;
    }
    return true;
}

std::string IoComposite::describe() const
{
    return "composite(" + std::to_string(elements_.size()) + " element" +
           (elements_.size() == 1 ? "" : "s") + ")";
}

Component IoSort::wrap(std::vector<IoElement> elements) const
{
    return Component(std::make_shared<IoComposite>(std::move(elements)), this);
}

Component IoSort::trivial() const { return wrap({}); }

Result<Component> IoSort::compose(const Component& a, const Component& b) const
{
    std::vector<IoElement> out = composite_of(a).elements();
    const auto& rhs = composite_of(b).elements();
    out.insert(out.end(), rhs.begin(), rhs.end());
    return wrap(std::move(out));
}

Component IoSort::substitute(const Component& c, const SubstArg& y, const Name& x) const
{
    std::vector<IoElement> out;
    for (const auto& e : composite_of(c).elements())
        out.push_back(substitute_element(base_, e, y, x));
    return wrap(std::move(out));
}

NameSet IoSort::support(const Component& c) const
{
    NameSet out;
    for (const auto& e : composite_of(c).elements()) {
        out.insert(e.inputs.begin(), e.inputs.end());
        out.insert(e.outputs.begin(), e.outputs.end());
    }
    return out;
}

NameSet IoSort::inputs(const Component& c) const
{
    NameSet out;
    for (const auto& e : composite_of(c).elements())
        out.insert(e.inputs.begin(), e.inputs.end());
    return out;
}

NameSet IoSort::outputs(const Component& c) const
{
    NameSet out;
    for (const auto& e : composite_of(c).elements())
        out.insert(e.outputs.begin(), e.outputs.end());
    return out;
}

Result<Component> IoSort::from_atom(const AtomAst& atom, const AtomContext& ctx) const
{
    TREO_TRY(Component inner, base_.from_atom(atom, ctx));
    IoElement e;
    e.kind = IoElement::Kind::Primitive;
    e.inputs = base_.inputs(inner);
    e.outputs = base_.outputs(inner);
    e.inner = std::move(inner);
    e.origin = ctx.origin;
    return wrap({std::move(e)});
}

Component IoSort::make_node(const NameSet& ins, const NameSet& outs, const Name& fallback) const
{
    IoElement e;
    e.kind = IoElement::Kind::Node;
    e.inputs = ins.empty() ? NameSet{fallback} : ins;
    e.outputs = outs.empty() ? NameSet{fallback} : outs;
    e.inner = base_.make_node(e.inputs, e.outputs, fallback);
    e.origin = to_string(fallback);
    return wrap({std::move(e)});
}

const IoComposite& composite_of(const Component& c)
{
    return dynamic_cast<const IoComposite&>(c.payload());
}

WellFormedness is_well_formed(const Component& c)
{
    std::map<Name, IoViolation> counts;
    for (const auto& e : composite_of(c).elements()) {
        for (const auto& x : e.inputs) {
            auto& v = counts.emplace(x, IoViolation{x, 0, 0}).first->second;
            v.readers += 1;
        }
        for (const auto& x : e.outputs) {
            auto& v = counts.emplace(x, IoViolation{x, 0, 0}).first->second;
            v.writers += 1;
        }
    }
    WellFormedness out;
    for (const auto& [name, v] : counts)
        if (v.readers > 1 || v.writers > 1) {
            out.ok = false;
            out.violations.push_back(v);
        }
    return out;
}

namespace {

const IoSort& io_sort_of(const Component& c)
{
    return dynamic_cast<const IoSort&>(*c.sort());
}

// Support names in order of first appearance, scanning each element's inputs
// before its outputs.
std::vector<Name> support_order(const std::vector<IoElement>& elements)
{
    std::vector<Name> order;
    NameSet seen;
    for (const auto& e : elements) {
        for (const auto& x : e.inputs)
            if (seen.insert(x).second)
                order.push_back(x);
        for (const auto& x : e.outputs)
            if (seen.insert(x).second)
                order.push_back(x);
    }
    return order;
}

Name output_alias(const Name& x) { return Name("$out." + to_string(x)); }

} // namespace

Component surgery(const Component& c, const NameSet& mixedBoundary)
{
    const IoSort& sort = io_sort_of(c);
    const SemanticSort& base = sort.base();
    const auto& original = composite_of(c).elements();
    std::vector<Name> order = support_order(original);

    NameSet supp;
    for (const auto& e : original) {
        supp.insert(e.inputs.begin(), e.inputs.end());
        supp.insert(e.outputs.begin(), e.outputs.end());
    }

    // The subscripted copy of x used inside element i. Normally x.i, but the
    // subscript skips ahead when the composite already mentions that name
    // (support can hold both a and a.1 at once), so copies never collide
    // with original names.
    std::map<Name, NameSet> claimed;
    std::map<std::pair<Name, size_t>, Name> target;
    for (size_t i = 0; i < original.size(); ++i) {
        for (const auto& x : original[i].support()) {
            for (uint64_t k = i + 1;; ++k) {
                Name copy = x.subscript(k);
                if (supp.count(copy) || claimed[x].count(copy))
                    continue;
                claimed[x].insert(copy);
                target.emplace(std::make_pair(x, i + 1), std::move(copy));
                break;
            }
        }
    }
    auto copy_of = [&](const Name& x, size_t i) { return target.at({x, i}); };

    // Where each name is read and written, by 1-based element position.
    std::map<Name, std::vector<size_t>> readers;
    std::map<Name, std::vector<size_t>> writers;
    for (size_t i = 0; i < original.size(); ++i) {
        for (const auto& x : original[i].inputs)
            readers[x].push_back(i + 1);
        for (const auto& x : original[i].outputs)
            writers[x].push_back(i + 1);
    }

    std::vector<IoElement> out;
    for (size_t i = 0; i < original.size(); ++i) {
        IoElement e = original[i];
        std::vector<std::pair<Name, SubstArg>> binds;
        for (const auto& x : e.support())
            binds.emplace_back(x, SubstArg(copy_of(x, i + 1)));
        e.inner = simultaneous_substitute(base, e.inner, binds);
        NameSet ins, outs;
        for (const auto& x : e.inputs)
            ins.insert(copy_of(x, i + 1));
        for (const auto& x : e.outputs)
            outs.insert(copy_of(x, i + 1));
        e.inputs = std::move(ins);
        e.outputs = std::move(outs);
        out.push_back(std::move(e));
    }

    for (const auto& x : order) {
        NameSet nodeIns, nodeOuts;
        for (size_t i : writers[x])
            nodeIns.insert(copy_of(x, i));
        for (size_t i : readers[x])
            nodeOuts.insert(copy_of(x, i));
        bool mixed = mixedBoundary.count(x) && !nodeIns.empty() && !nodeOuts.empty();
        if (nodeIns.empty() || mixed)
            nodeIns.insert(x);
        if (nodeOuts.empty())
            nodeOuts.insert(x);
        else if (mixed)
            nodeOuts.insert(output_alias(x));
        Component node = sort.make_node(nodeIns, nodeOuts, x);
        out.push_back(composite_of(node).elements().front());
    }

    return sort.wrap(std::move(out));
}

Component optimize_nodes(const Component& c, const NameSet& boundary)
{
    const IoSort& sort = io_sort_of(c);
    const SemanticSort& base = sort.base();
    std::vector<IoElement> elements = composite_of(c).elements();

    for (bool changed = true; changed;) {
        changed = false;
        for (size_t i = 0; i < elements.size(); ++i) {
            const IoElement& e = elements[i];
            if (e.kind != IoElement::Kind::Node || e.inputs.size() != 1 || e.outputs.size() != 1)
                continue;
            Name in = *e.inputs.begin();
            Name out = *e.outputs.begin();
            if (in == out || boundary.count(in) || boundary.count(out))
                continue;
            elements.erase(elements.begin() + static_cast<ptrdiff_t>(i));
            for (auto& other : elements)
                other = substitute_element(base, std::move(other), SubstArg(in), out);
            changed = true;
            break;
        }
    }

    return sort.wrap(std::move(elements));
}

} // namespace treo

#pragma once

#include <string>
#include <vector>

#include "treo/sort.hpp"

namespace treo {

// One element of a flat composition: an underlying-sort component together
// with its input and output name sets. Nodes are the merge-replicate
// elements inserted by surgery; everything else is a primitive.
struct IoElement {
    enum class Kind { Primitive, Node };
    Kind kind = Kind::Primitive;
    Component inner;
    NameSet inputs;
    NameSet outputs;
    std::string origin;

    NameSet support() const;
};

// Composition never multiplies automata out; it keeps the element list flat
// so surgery can rewire shared names before any product is taken.
class IoComposite : public ComponentBase {
public:
    explicit IoComposite(std::vector<IoElement> elements) : elements_(std::move(elements)) {}

    const std::vector<IoElement>& elements() const { return elements_; }
    bool equals(const ComponentBase& other) const override;
    std::string describe() const override;

private:
    std::vector<IoElement> elements_;
};

// Lifts an underlying sort to input/output-aware composites. Atoms wrap into
// one-element composites whose direction sets come from the underlying sort,
// composition concatenates, and substitution rewrites the direction sets
// alongside the wrapped components.
class IoSort final : public SemanticSort {
public:
    explicit IoSort(const SemanticSort& base) : base_(base) {}

    const SemanticSort& base() const { return base_; }

    std::string name() const override { return "io(" + base_.name() + ")"; }
    Component trivial() const override;
    Result<Component> compose(const Component& a, const Component& b) const override;
    Component substitute(const Component& c, const SubstArg& y, const Name& x) const override;
    NameSet support(const Component& c) const override;
    NameSet inputs(const Component& c) const override;
    NameSet outputs(const Component& c) const override;
    Result<Component> from_atom(const AtomAst& atom, const AtomContext& ctx) const override;
    Component make_node(const NameSet& ins, const NameSet& outs, const Name& fallback) const override;

    Component wrap(std::vector<IoElement> elements) const;

private:
    const SemanticSort& base_;
};

const IoComposite& composite_of(const Component& c);

// One shared name with its reader and writer counts; well-formedness demands
// at most one of each.
struct IoViolation {
    Name name;
    size_t readers = 0;
    size_t writers = 0;
};

struct WellFormedness {
    bool ok = true;
    std::vector<IoViolation> violations;
};

WellFormedness is_well_formed(const Component& c);

// Rewires a composite so every name is shared by at most one reader and one
// writer: element ports are subscripted with the element's 1-based position,
// and each original name gets a merge-replicate node fed by its writers and
// feeding its readers. Names nobody writes (or nobody reads) keep the
// original name on the free side. A name in mixedBoundary keeps the original
// name on the node's input side and gains a reserved "$out." alias on the
// output side, so both directions stay reachable from outside.
Component surgery(const Component& c, const NameSet& mixedBoundary = {});

// Removes relay nodes (one input, one output, both internal) and splices
// their neighbours together by renaming the output port to the input port.
Component optimize_nodes(const Component& c, const NameSet& boundary);

} // namespace treo

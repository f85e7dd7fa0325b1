#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "treo/span.hpp"

namespace treo {

struct TermAst;
struct PredAst;
struct ComponentAst;
struct DefinitionAst;

using TermPtr = std::shared_ptr<const TermAst>;
using PredPtr = std::shared_ptr<const PredAst>;
using ComponentPtr = std::shared_ptr<const ComponentAst>;
using DefnAstPtr = std::shared_ptr<const DefinitionAst>;

struct ListAst;

// A dotted name with zero or more index lists: a, std.sync, a[1], b[1:k][2].
struct VariableAst {
    std::string base;
    std::vector<ListAst> indices;
    Span span;
};

// One list entry. Single contributes one element; Splice T0..T1 contributes
// the elements T0 through T1 inline; Range T0:T1 contributes a single nested
// list [T0..T1] (so [1:k] is the one-element list holding [1, ..., k]).
struct ListItemAst {
    enum class Kind { Single, Splice, Range };
    Kind kind = Kind::Single;
    TermPtr a;
    TermPtr b;
};

struct ListAst {
    std::vector<ListItemAst> items;
    Span span;
};

enum class BinaryOp { Add, Sub, Mul, Div, Mod, Pow };
enum class CompareOp { Le, Lt, Ge, Gt, Eq, Ne };

struct TermAst {
    struct Nat {
        uint64_t value;
    };
    struct Dec {
        double value;
        std::string lexeme; // original spelling, kept for printing
    };
    struct BoolLit {
        bool value;
    };
    struct Text {
        std::string value;
    };
    struct Var {
        VariableAst var;
    };
    struct Comp {
        ComponentPtr comp;
    };
    struct Defn {
        DefnAstPtr defn;
    };
    struct ListLit {
        ListAst list;
    };
    // Half-open range term: lo up to hi-1.
    struct Slice {
        TermPtr lo;
        TermPtr hi;
    };
    struct Index {
        TermPtr base;
        ListAst index;
    };
    struct Call {
        std::string fn;
        std::vector<TermPtr> args;
    };
    struct Neg {
        TermPtr operand;
    };
    struct Binary {
        BinaryOp op = BinaryOp::Add;
        TermPtr lhs;
        TermPtr rhs;
    };

    using Repr = std::variant<Nat, Dec, BoolLit, Text, Var, Comp, Defn, ListLit, Slice, Index, Call, Neg, Binary>;
    Repr node;
    Span span;
};

struct PredAst {
    struct BoolConst {
        bool value;
    };
    struct Member {
        VariableAst var;
        TermPtr list;
    };
    struct Compare {
        CompareOp op;
        TermPtr lhs;
        TermPtr rhs;
    };
    // A bare variable used as a predicate; holds when it is bound to true.
    struct Truth {
        VariableAst var;
    };
    struct Not {
        PredPtr p;
    };
    struct And {
        PredPtr a;
        PredPtr b;
    };
    struct Or {
        PredPtr a;
        PredPtr b;
    };
    struct Implies {
        PredPtr a;
        PredPtr b;
    };
    struct Quant {
        bool universal;
        std::string var;
        TermPtr list;
        PredPtr body;
    };

    using Repr = std::variant<BoolConst, Member, Compare, Truth, Not, And, Or, Implies, Quant>;
    Repr node;
    Span span;
};

// Guard expressions inside transition atoms. Identifiers are classified as
// ports or memory cells once the declared interface is known; a primed
// identifier m' refers to the cell's value after the step.
struct GuardTermAst {
    enum class Kind { Ident, PrimedIdent, Int, Text, Bool };
    Kind kind = Kind::Ident;
    std::string ident;
    int64_t int_value = 0;
    std::string text_value;
    bool bool_value = false;
    Span span;
};

struct GuardEqAst {
    GuardTermAst lhs;
    GuardTermAst rhs;
};

struct CaTransitionAst {
    std::string from;
    std::vector<std::string> sync;
    std::vector<GuardEqAst> guard; // conjunction; empty means true
    std::string to;
    Span span;
};

struct AtomAst {
    struct Opaque {
        std::string text;
    };
    struct Automaton {
        std::optional<std::string> start;
        std::vector<CaTransitionAst> transitions;
    };
    std::variant<Opaque, Automaton> node;
    Span span;
};

enum class IoMarker { None, Input, Output, Mixed };

struct NodeDeclAst {
    VariableAst var;
    IoMarker io = IoMarker::None;
    std::optional<std::string> type_tag;
};

struct ComponentAst {
    struct VarRef {
        VariableAst var;
    };
    struct Atoms {
        std::vector<AtomAst> atoms;
    };
    struct Composition {
        std::vector<ComponentPtr> parts;
    };
    struct Comprehension {
        std::vector<ComponentPtr> body;
        PredPtr pred;
    };
    struct Instance {
        DefnAstPtr defn;
        std::optional<std::vector<TermPtr>> values;
        std::vector<VariableAst> args;
    };
    struct For {
        std::string var;
        TermPtr list;
        ComponentPtr body;
    };
    struct If {
        struct Branch {
            PredPtr pred; // null on a final bare else
            ComponentPtr body;
        };
        std::vector<Branch> branches;
    };

    using Repr = std::variant<VarRef, Atoms, Composition, Comprehension, Instance, For, If>;
    Repr node;
    Span span;
};

struct DefinitionAst {
    struct VarRef {
        VariableAst var;
    };
    struct Structure {
        std::optional<std::vector<VariableAst>> params;
        bool has_nodes = false;
        std::vector<NodeDeclAst> nodes;
        ComponentPtr body;
    };

    std::variant<VarRef, Structure> node;
    Span span;
};

struct AssignmentAst {
    std::string name;
    DefnAstPtr defn;
    Span span;
};

struct SourceFileAst {
    std::optional<std::string> section;
    std::vector<std::string> imports;
    std::vector<AssignmentAst> assignments;
};

template <typename T, typename... Args>
std::shared_ptr<const T> make_ast(Args&&... args)
{
    return std::make_shared<const T>(T{std::forward<Args>(args)...});
}

} // namespace treo

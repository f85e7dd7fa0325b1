#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "treo/component.hpp"
#include "treo/error.hpp"
#include "treo/name.hpp"

namespace treo {

struct DefinitionValue;
using DefinitionPtr = std::shared_ptr<const DefinitionValue>;

// The value domain: atoms (integers, booleans, text, decimals, component
// instances, component definitions) and ragged arrays thereof. Arrays are the
// node case; everything else is an atom of size zero.
class Value {
public:
    using Array = std::vector<Value>;
    using List = Array;
    using Repr = std::variant<int64_t, bool, std::string, double, Component, DefinitionPtr, Array>;

    Value() : v_(int64_t{0}) {}
    Value(int64_t i) : v_(i) {}
    Value(bool b) : v_(b) {}
    Value(std::string s) : v_(std::move(s)) {}
    Value(const char* s) : v_(std::string(s)) {}
    Value(double d) : v_(d) {}
    Value(Component c) : v_(std::move(c)) {}
    Value(DefinitionPtr d) : v_(std::move(d)) {}
    Value(Array xs) : v_(std::move(xs)) {}

    bool is_int() const { return std::holds_alternative<int64_t>(v_); }
    bool is_bool() const { return std::holds_alternative<bool>(v_); }
    bool is_text() const { return std::holds_alternative<std::string>(v_); }
    bool is_decimal() const { return std::holds_alternative<double>(v_); }
    bool is_component() const { return std::holds_alternative<Component>(v_); }
    bool is_definition() const { return std::holds_alternative<DefinitionPtr>(v_); }
    bool is_array() const { return std::holds_alternative<Array>(v_); }
    bool is_atom() const { return !is_array(); }
    bool is_numeric() const { return is_int() || is_decimal(); }

    int64_t as_int() const { return std::get<int64_t>(v_); }
    bool as_bool() const { return std::get<bool>(v_); }
    const std::string& as_text() const { return std::get<std::string>(v_); }
    double as_decimal() const { return std::get<double>(v_); }
    const Component& as_component() const { return std::get<Component>(v_); }
    const DefinitionPtr& as_definition() const { return std::get<DefinitionPtr>(v_); }
    const Array& as_array() const { return std::get<Array>(v_); }
    Array& as_array() { return std::get<Array>(v_); }

    size_t tag() const { return v_.index(); }
    const Repr& repr() const { return v_; }

private:
    Repr v_;
};

// Length of a ragged array; atoms have length zero.
size_t len(const Value& v);

inline const char* type_name(const Value& v)
{
    switch (v.tag()) {
    case 0: return "integer";
    case 1: return "boolean";
    case 2: return "string";
    case 3: return "decimal";
    case 4: return "component";
    case 5: return "definition";
    default: return "list";
    }
}

bool value_equal(const Value& a, const Value& b);
inline bool operator==(const Value& a, const Value& b) { return value_equal(a, b); }

// Total order used for deterministic iteration (tag rank first, then
// content; components and definitions order by creation id).
int value_compare(const Value& a, const Value& b);

std::string to_string(const Value& v);

// Multi-dimensional access. The index is itself a ragged array of naturals:
// a leading natural selects one child, a leading list distributes the rest of
// the index over its entries and collects the results in a list.
Result<Value> access(const Value& x, const Value& index, Span where = {});

// Same traversal over name arrays, with one extension: indexing an atomic
// name with a natural subscripts it (a at 1 gives a.1).
Result<NameArray> access_names(const NameArray& x, const Value& index, Span where = {});

// Depth-first atom sequence of a ragged array.
void flatten(const Value& v, std::vector<Value>& out);
Value::Array flatten(const Value& v);

// [i, i+1, ..., j]; empty when i > j.
Value lst(int64_t i, int64_t j);

// Same tree structure (atoms match atoms regardless of content, lists match
// lists of equal length pointwise).
bool shape_match(const Value& a, const Value& b);
bool shape_match(const NameArray& a, const Value& b);
bool shape_match(const NameArray& a, const NameArray& b);

// Checks the atom is a non-negative integer and returns it.
Result<uint64_t> as_natural(const Value& v, Span where = {});

// True when every atom of the index tree is a natural.
bool is_natural_array(const Value& v);

} // namespace treo

#pragma once

#include "treo/ast.hpp"
#include "treo/error.hpp"
#include "treo/value.hpp"

namespace treo {

// Arithmetic on integers stays integral (division truncates toward zero);
// mixing an integer with a decimal promotes to decimal. Division or modulus
// by zero and a negative integer exponent are errors, as is any operand that
// is not a number.
Result<Value> apply_binary(BinaryOp op, const Value& lhs, const Value& rhs, Span where);
Result<Value> apply_negate(const Value& operand, Span where);

// = and != compare any two values structurally; the orderings require two
// numbers or two strings.
Result<bool> apply_compare(CompareOp op, const Value& lhs, const Value& rhs, Span where);

// Length of a list; every non-list value has length zero.
Result<Value> builtin_len(const Value& operand, Span where);

} // namespace treo

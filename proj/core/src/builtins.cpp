#include "treo/builtins.hpp"

#include <cmath>
#include <string>

namespace treo {

namespace {

bool is_number(const Value& v) { return v.is_int() || v.is_decimal(); }

double as_double(const Value& v)
{
    return v.is_int() ? static_cast<double>(v.as_int()) : v.as_decimal();
}

Result<int64_t> int_pow(int64_t base, int64_t exp, Span where)
{
    if (exp < 0)
        return make_error(ErrorKind::Arithmetic, "negative exponent in integer power", where);
    int64_t acc = 1;
    while (exp-- > 0)
        acc *= base;
    return acc;
}

const char* op_text(BinaryOp op)
{
    switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Pow: return "^";
    }
    return "?";
}

} // namespace

Result<Value> apply_binary(BinaryOp op, const Value& lhs, const Value& rhs, Span where)
{
    if (!is_number(lhs) || !is_number(rhs))
        return make_error(ErrorKind::TypeMismatch,
                          std::string("operator ") + op_text(op) + " needs numbers, found " +
                              std::string(type_name(lhs)) + " and " + type_name(rhs),
                          where);

    if (lhs.is_int() && rhs.is_int()) {
        int64_t a = lhs.as_int();
        int64_t b = rhs.as_int();
        switch (op) {
        case BinaryOp::Add: return Value(a + b);
        case BinaryOp::Sub: return Value(a - b);
        case BinaryOp::Mul: return Value(a * b);
        case BinaryOp::Div:
            if (b == 0)
                return make_error(ErrorKind::Arithmetic, "division by zero", where);
            return Value(a / b);
        case BinaryOp::Mod:
            if (b == 0)
                return make_error(ErrorKind::Arithmetic, "modulus by zero", where);
            return Value(a % b);
        case BinaryOp::Pow: {
            TREO_TRY(auto r, int_pow(a, b, where));
            return Value(r);
        }
        }
    }

    double a = as_double(lhs);
    double b = as_double(rhs);
    switch (op) {
    case BinaryOp::Add: return Value(a + b);
    case BinaryOp::Sub: return Value(a - b);
    case BinaryOp::Mul: return Value(a * b);
    case BinaryOp::Div:
        if (b == 0)
            return make_error(ErrorKind::Arithmetic, "division by zero", where);
        return Value(a / b);
    case BinaryOp::Mod:
        if (b == 0)
            return make_error(ErrorKind::Arithmetic, "modulus by zero", where);
        return Value(std::fmod(a, b));
    case BinaryOp::Pow: return Value(std::pow(a, b));
    }
    return make_error(ErrorKind::Internal, "unknown operator", where);
}

Result<Value> apply_negate(const Value& operand, Span where)
{
    if (operand.is_int())
        return Value(-operand.as_int());
    if (operand.is_decimal())
        return Value(-operand.as_decimal());
    return make_error(ErrorKind::TypeMismatch,
                      std::string("unary - needs a number, found ") + type_name(operand), where);
}

Result<bool> apply_compare(CompareOp op, const Value& lhs, const Value& rhs, Span where)
{
    if (op == CompareOp::Eq)
        return value_equal(lhs, rhs);
    if (op == CompareOp::Ne)
        return !value_equal(lhs, rhs);

    int cmp = 0;
    if (is_number(lhs) && is_number(rhs)) {
        if (lhs.is_int() && rhs.is_int())
            cmp = lhs.as_int() < rhs.as_int() ? -1 : lhs.as_int() > rhs.as_int() ? 1 : 0;
        else {
            double a = as_double(lhs);
            double b = as_double(rhs);
            cmp = a < b ? -1 : a > b ? 1 : 0;
        }
    } else if (lhs.is_text() && rhs.is_text()) {
        cmp = lhs.as_text().compare(rhs.as_text());
        cmp = cmp < 0 ? -1 : cmp > 0 ? 1 : 0;
    } else {
        return make_error(ErrorKind::TypeMismatch,
                          std::string("ordering needs two numbers or two strings, found ") +
                              std::string(type_name(lhs)) + " and " + type_name(rhs),
                          where);
    }

    switch (op) {
    case CompareOp::Le: return cmp <= 0;
    case CompareOp::Lt: return cmp < 0;
    case CompareOp::Ge: return cmp >= 0;
    case CompareOp::Gt: return cmp > 0;
    default: return make_error(ErrorKind::Internal, "unknown comparison", where);
    }
}

Result<Value> builtin_len(const Value& operand, Span where)
{
    (void)where;
    return Value(static_cast<int64_t>(len(operand)));
}

} // namespace treo

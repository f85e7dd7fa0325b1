#include "doctest.h"

#include "treo/builtins.hpp"

using namespace treo;

namespace {

Value bin(BinaryOp op, Value a, Value b)
{
    auto r = apply_binary(op, a, b, {});
    REQUIRE(r.ok());
    return r.value();
}

} // namespace

TEST_CASE("integer arithmetic stays integral")
{
    CHECK(bin(BinaryOp::Add, Value(int64_t{2}), Value(int64_t{3})) == Value(int64_t{5}));
    CHECK(bin(BinaryOp::Sub, Value(int64_t{2}), Value(int64_t{5})) == Value(int64_t{-3}));
    CHECK(bin(BinaryOp::Mul, Value(int64_t{4}), Value(int64_t{6})) == Value(int64_t{24}));
    CHECK(bin(BinaryOp::Div, Value(int64_t{7}), Value(int64_t{2})) == Value(int64_t{3}));
    CHECK(bin(BinaryOp::Div, Value(int64_t{-7}), Value(int64_t{2})) == Value(int64_t{-3}));
    CHECK(bin(BinaryOp::Mod, Value(int64_t{7}), Value(int64_t{2})) == Value(int64_t{1}));
    CHECK(bin(BinaryOp::Pow, Value(int64_t{2}), Value(int64_t{10})) == Value(int64_t{1024}));
    CHECK(bin(BinaryOp::Pow, Value(int64_t{5}), Value(int64_t{0})) == Value(int64_t{1}));
}

TEST_CASE("mixing in a decimal promotes the result")
{
    Value r = bin(BinaryOp::Add, Value(int64_t{2}), Value(1.5));
    REQUIRE(r.is_decimal());
    CHECK(r.as_decimal() == doctest::Approx(3.5));
    CHECK(bin(BinaryOp::Div, Value(1.0), Value(4.0)).as_decimal() == doctest::Approx(0.25));
    CHECK(bin(BinaryOp::Mod, Value(7.5), Value(int64_t{2})).as_decimal() == doctest::Approx(1.5));
    CHECK(bin(BinaryOp::Pow, Value(4.0), Value(0.5)).as_decimal() == doctest::Approx(2.0));
}

TEST_CASE("arithmetic failure modes")
{
    CHECK(apply_binary(BinaryOp::Div, Value(int64_t{1}), Value(int64_t{0}), {}).error().kind ==
          ErrorKind::Arithmetic);
    CHECK(apply_binary(BinaryOp::Mod, Value(int64_t{1}), Value(int64_t{0}), {}).error().kind ==
          ErrorKind::Arithmetic);
    CHECK(apply_binary(BinaryOp::Pow, Value(int64_t{2}), Value(int64_t{-1}), {}).error().kind ==
          ErrorKind::Arithmetic);
    CHECK(apply_binary(BinaryOp::Add, Value("a"), Value("b"), {}).error().kind ==
          ErrorKind::TypeMismatch);
    CHECK(apply_binary(BinaryOp::Mul, Value(int64_t{2}), Value(true), {}).error().kind ==
          ErrorKind::TypeMismatch);
}

TEST_CASE("negation flips numbers only")
{
    CHECK(apply_negate(Value(int64_t{5}), {}).value() == Value(int64_t{-5}));
    CHECK(apply_negate(Value(2.5), {}).value() == Value(-2.5));
    CHECK_FALSE(apply_negate(Value("x"), {}).ok());
}

TEST_CASE("equality is structural, orderings need numbers or strings")
{
    Value xs(Value::Array{Value(int64_t{1}), Value(int64_t{2})});
    Value ys(Value::Array{Value(int64_t{1}), Value(int64_t{2})});
    CHECK(apply_compare(CompareOp::Eq, xs, ys, {}).value());
    CHECK(apply_compare(CompareOp::Ne, xs, Value(int64_t{1}), {}).value());
    CHECK(apply_compare(CompareOp::Lt, Value(int64_t{1}), Value(int64_t{2}), {}).value());
    CHECK(apply_compare(CompareOp::Le, Value(int64_t{2}), Value(2.0), {}).value());
    CHECK(apply_compare(CompareOp::Gt, Value(2.5), Value(int64_t{2}), {}).value());
    CHECK(apply_compare(CompareOp::Lt, Value("apple"), Value("pear"), {}).value());
    CHECK_FALSE(apply_compare(CompareOp::Ge, Value("apple"), Value("pear"), {}).value());
    CHECK_FALSE(apply_compare(CompareOp::Lt, Value(int64_t{1}), Value("a"), {}).ok());
    CHECK_FALSE(apply_compare(CompareOp::Le, Value(true), Value(false), {}).ok());
}

TEST_CASE("len is a total function on values")
{
    CHECK(builtin_len(Value(Value::Array{Value(int64_t{1}), Value(int64_t{2})}), {}).value() ==
          Value(int64_t{2}));
    CHECK(builtin_len(Value(int64_t{5}), {}).value() == Value(int64_t{0}));
    CHECK(builtin_len(Value("abc"), {}).value() == Value(int64_t{0}));
}

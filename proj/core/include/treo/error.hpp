#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "treo/span.hpp"

namespace treo {

// Lexing and parsing stop at the first offending token; these are thrown and
// converted to diagnostics at the driver boundary.
struct SyntaxError : std::runtime_error {
    Span span;
    SyntaxError(std::string msg, Span sp) : std::runtime_error(std::move(msg)), span(sp) {}
};

enum class ErrorKind {
    UnboundName,
    TypeMismatch,
    Arity,
    ShapeMismatch,
    DuplicateName,
    OutOfRange,
    Arithmetic,
    Recursion,
    Atom,
    Import,
    ImportCycle,
    NotWellFormed,
    Script,
    Unsupported,
    Internal,
};

// The evaluation-failure value (the semantics' "lightning bolt"). Carries the
// offending span when known and the chain of definitions being instantiated.
struct EvalError {
    ErrorKind kind = ErrorKind::Internal;
    std::string message;
    Span span;
    std::vector<std::string> trace;

    std::string render() const
    {
        std::string out;
        if (span.valid())
            out += to_string(span) + ": ";
        out += message;
        for (const auto& frame : trace)
            out += "\n  while " + frame;
        return out;
    }
};

inline EvalError make_error(ErrorKind kind, std::string msg, Span sp = {})
{
    return EvalError{kind, std::move(msg), sp, {}};
}

// Success-or-EvalError carrier used throughout evaluation, where failure is a
// first-class semantic value rather than an exception.
template <typename T>
class Result {
public:
    Result(T value) : v_(std::move(value)) {}
    Result(EvalError err) : v_(std::move(err)) {}

    bool ok() const { return std::holds_alternative<T>(v_); }
    explicit operator bool() const { return ok(); }

    T& value() & { return std::get<T>(v_); }
    const T& value() const& { return std::get<T>(v_); }
    T&& value() && { return std::get<T>(std::move(v_)); }

    EvalError& error() & { return std::get<EvalError>(v_); }
    const EvalError& error() const& { return std::get<EvalError>(v_); }
    EvalError&& error() && { return std::get<EvalError>(std::move(v_)); }

private:
    std::variant<T, EvalError> v_;
};

// Unwraps a Result expression or early-returns its error.
#define TREO_TRY_CAT_(a, b) a##b
#define TREO_TRY_CAT(a, b) TREO_TRY_CAT_(a, b)
#define TREO_TRY(decl, expr)                                                  \
    auto TREO_TRY_CAT(treo_try_, __LINE__) = (expr);                          \
    if (!TREO_TRY_CAT(treo_try_, __LINE__).ok())                              \
        return std::move(TREO_TRY_CAT(treo_try_, __LINE__)).error();          \
    decl = std::move(TREO_TRY_CAT(treo_try_, __LINE__)).value()

#define TREO_CHECK(expr)                                                      \
    do {                                                                      \
        auto TREO_TRY_CAT(treo_chk_, __LINE__) = (expr);                      \
        if (!TREO_TRY_CAT(treo_chk_, __LINE__).ok())                          \
            return std::move(TREO_TRY_CAT(treo_chk_, __LINE__)).error();      \
    } while (0)

// Non-fatal findings surfaced by `check` (and compile, on stderr).
struct Diagnostic {
    enum class Severity { Warning, Note };
    Severity severity = Severity::Warning;
    std::string message;
    Span span;
};

} // namespace treo

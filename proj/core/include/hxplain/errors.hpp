#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hxplain {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnboundVariable : Error {
    explicit UnboundVariable(const std::string& var) : Error("unbound variable " + var), variable(var) {}
    std::string variable;
};

struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t line_, std::size_t column_)
        : Error(msg), line(line_), column(column_) {}
    ParseError(const std::string& msg, std::string pointer_) : Error(msg), pointer(std::move(pointer_)) {}
    std::size_t line = 0;
    std::size_t column = 0;
    std::string pointer; // JSON pointer for semantic errors
};

struct ValidationError : Error {
    using Error::Error;
};

struct InvalidSpec : Error {
    using Error::Error;
};

struct PathMismatch : Error {
    using Error::Error;
};

struct EndpointMissing : Error {
    using Error::Error;
};

struct BudgetExceeded : Error {
    using Error::Error;
};

struct NotInfeasible : Error {
    NotInfeasible() : Error("system is feasible") {}
};

struct ScaleExceeded : Error {
    using Error::Error;
};

struct Unreachable : Error {
    using Error::Error;
};

// Raised when a load-bearing output property fails at runtime.
struct InvariantViolation : Error {
    using Error::Error;
};

} // namespace hxplain

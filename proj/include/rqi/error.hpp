// error.hpp — error kinds shared by every module of the library

#pragma once

#include <stdexcept>
#include <string>

namespace rqi {

enum class ErrorKind {
    NonSquare,
    DimensionMismatch,
    NotHermitian,
    EigenFailure,
    InvalidStep,
    InvalidTimestep,
    SiteOutOfRange,
    StateTooLarge,
    NormTooLarge,
    MismatchedTimestep,
    NotAnIsometry,
    CompletionFailure,
    NotSelfAdjoint,
    InvalidProjectionFamily,
    InsufficientPoints,
    NonPositiveValue,
    ParseError,
    SchemaError,
    ValidationError,
};

const char* to_string(ErrorKind kind) noexcept;

// True for errors caused by bad user input (CLI exit code 1); everything
// else is a numerical failure (exit code 2).
bool is_validation_error(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

    ErrorKind kind() const noexcept { return kind_; }
    // Message without the kind prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

} // namespace rqi

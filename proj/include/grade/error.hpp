#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace grade {

/// Base of every error thrown by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition or invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Requested size exceeds what the dense simulator supports.
class CapacityError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NotFoundError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Malformed circuit text. Carries the 1-based line number of the offending line.
class ParseError : public ValidationError {
public:
    ParseError(std::size_t line, const std::string& what)
        : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace grade

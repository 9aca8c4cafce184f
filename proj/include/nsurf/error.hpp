#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nsurf {

/// Root of all exceptions thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed gluing file or vector line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Gluing table is not an involution (or glues a face to itself).
class InvolutionError : public Error {
public:
    using Error::Error;
};

/// An operation was called on an input that violates its precondition
/// (not closed, not orientable, not a manifold, wrong vector length, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A bounded search would exceed its configured work budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

} // namespace nsurf

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qra {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Tables or relations that are structurally unusable (wrong shape, index out of range).
class MalformedInput : public Error {
public:
    using Error::Error;
};

/// A precondition on algebraic content failed (e.g. p is not a positive symmetric idempotent).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A closure or enumeration grew past its cap.
class CapExceeded : public Error {
public:
    CapExceeded(const std::string& what, std::size_t cap)
        : Error(what + " exceeded cap of " + std::to_string(cap)), cap_(cap) {}

    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t cap_;
};

/// Text-format diagnostics carry a 1-based line and column.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& msg)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace qra

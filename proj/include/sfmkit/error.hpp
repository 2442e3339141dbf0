#pragma once

#include <stdexcept>
#include <string>

namespace sfmkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes disagree (non-square input, mismatched dims, index out of range).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A matrix that must be Hermitian is not, at the requested tolerance.
class SymmetryError : public Error {
public:
    using Error::Error;
};

/// Unknown atom label.
class LookupError : public Error {
public:
    using Error::Error;
};

/// Structural precondition violated (duplicate labels, non-finite entries, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Malformed input document. Line/column are 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : Error(what), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace sfmkit

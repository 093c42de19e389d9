#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cptk {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class AlphabetError : public Error {
public:
    using Error::Error;
};

/// A named predicate leaf was hit by a construction that needs a regular language.
class NonRegularLeaf : public Error {
public:
    using Error::Error;
};

class UnknownPredicate : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class StepBudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Malformed input document; carries a 1-based line/column when known.
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

} // namespace cptk

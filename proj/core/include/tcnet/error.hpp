// error.hpp -- exception hierarchy shared across the library.

#pragma once

#include <stdexcept>
#include <string>

namespace tcnet {

/// Base class of every error thrown by tcnet.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed textual input (files, formulas, rendered words).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t pos = 0)
        : Error(what), position(pos) {}
    std::size_t position;
};

/// Structurally ill-formed automaton, machine or word.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Well-formed input outside an operation's domain (foreign letter, size mismatch).
class InputError : public Error {
public:
    using Error::Error;
};

/// The configured node budget ran out before a verdict was reached.
/// Deliberately not a verdict: callers must treat it as "unknown".
class BudgetExhaustedError : public Error {
public:
    explicit BudgetExhaustedError(std::size_t budget)
        : Error("node budget exhausted (" + std::to_string(budget) + " nodes)") {}
};

/// Postcondition of the library itself failed; indicates a bug, never user error.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace tcnet

#pragma once

#include <stdexcept>
#include <string>

namespace ldphase {

/// Argument outside the mathematical domain of a function (e.g. u < 0 in h(u)).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller violated a documented precondition (wrong graph class, p > r, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Exhaustive computation would exceed the configured work cap.
class SizeLimitError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Iterative solver did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A constructive search (witness, certificate) exhausted its schedule.
class SearchExhaustedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Request outside what the library can decide without guessing.
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input (graph files, graphon files).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ldphase

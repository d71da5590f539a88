#pragma once

#include <stdexcept>
#include <string>

namespace eqtk {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad literals, schema violations, violated preconditions.
class ParseError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class UnboundedError : public Error {
public:
    using Error::Error;
};

class InfeasibleError : public Error {
public:
    using Error::Error;
};

class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// Floating-point work failed to meet its accuracy budget.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// A checked mathematical invariant did not hold mid-run.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

}  // namespace eqtk

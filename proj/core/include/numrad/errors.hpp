#pragma once

#include <stdexcept>
#include <string>

namespace numrad {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input to a Hermitian-only routine was not Hermitian within tolerance.
class NotHermitian : public Error {
public:
    using Error::Error;
};

/// Input to a positive-only routine had a significantly negative eigenvalue.
class NotPositive : public Error {
public:
    using Error::Error;
};

/// A scalar parameter was outside its admissible range (e.g. t outside [0,1]).
class DomainError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Matrix or config file could not be parsed.
class ParseError : public Error {
public:
    using Error::Error;
};

class BadSpec : public Error {
public:
    using Error::Error;
};

class UnknownEntry : public Error {
public:
    using Error::Error;
};

/// Operands do not match what a catalog entry expects.
class OperandMismatch : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace numrad

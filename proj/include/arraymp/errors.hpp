#pragma once

#include <stdexcept>
#include <string>

namespace arraymp {

/// Base of all library errors. The CLI maps the three branches below to
/// exit codes: ConfigError -> 1, DataError -> 2, NumericError -> 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad run configuration or a scenario that cannot be set up as requested.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent input data (almanac, OXTS, CSV).
class DataError : public Error {
public:
    using Error::Error;
};

/// Numerical failure inside an estimator or model evaluation.
class NumericError : public Error {
public:
    using Error::Error;
};

class ParseError final : public DataError {
public:
    ParseError(const std::string& what, long line)
        : DataError(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    explicit ParseError(const std::string& what) : DataError(what), line_(-1) {}
    long line() const { return line_; }

private:
    long line_;
};

class InvalidRotationError final : public NumericError {
public:
    using NumericError::NumericError;
};

class DegenerateGeometryError final : public NumericError {
public:
    using NumericError::NumericError;
};

class UnresolvableAmbiguityError final : public NumericError {
public:
    using NumericError::NumericError;
};

class InsufficientSatellitesError final : public NumericError {
public:
    using NumericError::NumericError;
};

class CombinatorialBlowupError final : public NumericError {
public:
    using NumericError::NumericError;
};

class DestructiveFadeError final : public NumericError {
public:
    using NumericError::NumericError;
};

class SingularUpdateError final : public NumericError {
public:
    using NumericError::NumericError;
};

class EmptyEpochError final : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace arraymp

#pragma once

#include <stdexcept>
#include <string>

namespace comove {

// Base class for all library errors. The CLI maps these to exit code 1
// (data/computation errors) or 2 (schema/usage errors).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input file violates the documented CSV schema (header, column count).
class SchemaError : public Error {
public:
    using Error::Error;
};

// Row-level data problem: malformed value, non-finite rate, duplicate date.
class IngestionError : public Error {
public:
    using Error::Error;
};

// Weekly panel cannot be constructed (missing series, empty input).
class PanelError : public Error {
public:
    using Error::Error;
};

// Regression has no usable variation (constant series, collinear columns).
class DegenerateRegressionError : public Error {
public:
    using Error::Error;
};

// Likelihood evaluation failed numerically (near-singular H_t).
class LikelihoodError : public Error {
public:
    using Error::Error;
};

// Estimation-level failure: invalid parameters, indefinite Hessian,
// precondition violations on standard-error computation.
class EstimationError : public Error {
public:
    using Error::Error;
};

}  // namespace comove

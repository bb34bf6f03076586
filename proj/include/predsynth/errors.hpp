#pragma once

#include <stdexcept>

namespace predsynth {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dimension or index mismatch between objects that must agree.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Event probabilities that do not form a forecast on the simplex.
class InvalidForecastError : public Error {
public:
    using Error::Error;
};

/// Pool coefficients whose vertex values leave [0,1].
class InvalidCoefficientsError : public Error {
public:
    using Error::Error;
};

/// A coefficient tensor that cannot arise from any linear pool.
class NonSeparableError : public Error {
public:
    using Error::Error;
};

/// A target mean on the simplex boundary, where the requested prior
/// family degenerates.
class DegenerateMeanError : public Error {
public:
    using Error::Error;
};

/// Inconsistent inputs to a verification routine (e.g. mismatched means).
class SpecificationError : public Error {
public:
    using Error::Error;
};

/// A request the chosen representation cannot serve (e.g. quadrature in
/// too many dimensions, sampling a kernel without an inverse).
class CapabilityError : public Error {
public:
    using Error::Error;
};

/// Malformed or contradictory problem configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace predsynth

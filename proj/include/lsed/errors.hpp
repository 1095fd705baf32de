#pragma once

#include <stdexcept>
#include <string>

namespace lsed {

/// Invalid experiment or model configuration (missing temperature, bad grid, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to reach its target (non-convergence,
/// step-size underflow, insufficient resolution).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Trajectory left the configured bound.
class EscapeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Requested accuracy cannot be met with the supplied discretization.
class AccuracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace lsed

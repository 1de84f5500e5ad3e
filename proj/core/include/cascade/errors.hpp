#pragma once

#include <stdexcept>
#include <string>

namespace cascade {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid model parameters or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A coupling matrix whose structure the expansion does not support
/// (e.g. bandwidth above one).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Input outside the mathematical domain of an operation
/// (nonpositive shell energy, zero amplitude, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Requested index range is empty or out of bounds.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A non-finite value appeared while evaluating the right-hand side.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, int shell, int stage = -1)
      : Error(what), shell_(shell), stage_(stage) {}

  int shell() const noexcept { return shell_; }
  /// Runge-Kutta stage (1-based) or -1 when raised outside an integrator.
  int stage() const noexcept { return stage_; }

 private:
  int shell_;
  int stage_;
};

/// Adaptive integration could not proceed (step size underflow).
class IntegrationFailure : public Error {
 public:
  IntegrationFailure(const std::string& what, double time)
      : Error(what), time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace cascade

#pragma once

#include <stdexcept>
#include <string>

namespace mbslie {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A local chart was evaluated at or beyond its domain limit.
class ChartBoundary : public Error {
 public:
  using Error::Error;
};

/// A rotation composition produced an angle where the closed-form
/// coefficients degenerate (compound angle at 2*pi).
class CompoundAnglePi : public Error {
 public:
  using Error::Error;
};

/// The saddle-point (KKT) matrix is numerically singular.
class SingularKkt : public Error {
 public:
  using Error::Error;
};

/// An iterative projection did not reach its tolerance.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// Absolute or local coordinates do not match the requested combination.
class VariantMismatch : public Error {
 public:
  using Error::Error;
};

/// Initial state violates the constraints beyond tolerance.
class InconsistentState : public Error {
 public:
  using Error::Error;
};

/// Wraps a stepping error with the index of the step that failed.
class IntegrationFailure : public Error {
 public:
  IntegrationFailure(long step, const std::string& what)
      : Error("step " + std::to_string(step) + ": " + what), step_(step) {}

  long step() const noexcept { return step_; }

 private:
  long step_;
};

}  // namespace mbslie

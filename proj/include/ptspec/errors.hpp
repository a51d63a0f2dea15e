#pragma once

#include <stdexcept>
#include <string>

namespace ptspec {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative method stopped without meeting its tolerance.  Carries the
/// best estimate reached so callers can still report partial results.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_estimate = 0.0)
      : std::runtime_error(what), best_estimate_(best_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

/// Failure inside the ODE integrator (step underflow, non-finite data).
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double x)
      : std::runtime_error(what), x_(x) {}

  double x() const noexcept { return x_; }

 private:
  double x_;
};

}  // namespace ptspec

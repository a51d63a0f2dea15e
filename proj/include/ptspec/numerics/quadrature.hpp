#pragma once

#include <functional>

namespace ptspec::numerics {

struct QuadratureSpec {
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  int max_subdivisions = 200;

  /// Throws DomainError when a tolerance is non-positive or
  /// max_subdivisions < 1.
  void validate() const;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature of f over [a, b].
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate meets abs_tol + rel_tol * |result|.  Integrable endpoint
/// singularities in the derivative (e.g. sqrt(1 - s^N) at s = 1) converge
/// because nodes never touch the endpoints.
///
/// Throws ConvergenceError (with the best estimate attached) after
/// max_subdivisions bisections, and DomainError if f returns a non-finite
/// value.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

}  // namespace ptspec::numerics

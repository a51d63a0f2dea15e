#pragma once

namespace ptspec::numerics {

/// Gamma function for positive real arguments.
///
/// Lanczos approximation (g = 7, nine coefficients) on [0.5, inf) with the
/// recurrence Gamma(x) = Gamma(x + 1) / x below 0.5.  Relative error is below
/// 1e-14 on (0.5, 3], which covers every argument the quantization formulas
/// need (1 + 1/N and 3/2 + 1/N).
/// Throws DomainError for x <= 0 or non-finite x.
double gamma(double x);

}  // namespace ptspec::numerics

#pragma once

#include <functional>

namespace ptspec::numerics {

/// Brent's method on a sign-changing bracket [lo, hi].
///
/// Every iterate stays inside the current bracket; inverse quadratic or
/// secant steps are accepted only when they shrink it fast enough, otherwise
/// the step is a bisection.  Returns a point r of a final bracket of width
/// <= tol across which f changes sign (or where f(r) == 0).
///
/// Throws DomainError when f(lo) and f(hi) have the same sign, when tol <= 0,
/// or when f returns NaN (the message names the abscissa).
double refine_root(const std::function<double(double)>& f, double lo,
                   double hi, double tol);

}  // namespace ptspec::numerics

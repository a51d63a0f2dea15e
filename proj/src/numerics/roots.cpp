#include "ptspec/numerics/roots.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "ptspec/errors.hpp"

namespace ptspec::numerics {

namespace {

double evaluate(const std::function<double(double)>& f, double x) {
  const double y = f(x);
  if (std::isnan(y)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "refine_root: function returned NaN at x = " << x;
    throw DomainError(msg.str());
  }
  return y;
}

}  // namespace

double refine_root(const std::function<double(double)>& f, double lo,
                   double hi, double tol) {
  if (!(tol > 0.0)) {
    throw DomainError("refine_root: tolerance must be positive");
  }
  double a = lo;
  double b = hi;
  double fa = evaluate(f, a);
  double fb = evaluate(f, b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (std::signbit(fa) == std::signbit(fb)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "refine_root: invalid bracket [" << lo << ", " << hi
        << "], f has the same sign at both ends (" << fa << ", " << fb << ")";
    throw DomainError(msg.str());
  }

  // b is the best estimate, [b, c] always brackets the root.
  double c = a;
  double fc = fa;
  double step = b - a;
  double prev_step = step;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (int iter = 0; iter < 200; ++iter) {
    if (std::signbit(fb) == std::signbit(fc)) {
      c = a;
      fc = fa;
      step = prev_step = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
    const double half = 0.5 * (c - b);
    if (std::abs(half) <= tol1 || fb == 0.0) {
      return b;
    }
    if (std::abs(prev_step) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p;
      double q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * half * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * half * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) {
        q = -q;
      } else {
        p = -p;
      }
      if (2.0 * p < std::min(3.0 * half * q - std::abs(tol1 * q),
                             std::abs(prev_step * q))) {
        prev_step = step;
        step = p / q;
      } else {
        step = half;
        prev_step = step;
      }
    } else {
      step = half;
      prev_step = step;
    }
    a = b;
    fa = fb;
    b += (std::abs(step) > tol1) ? step : std::copysign(tol1, half);
    fb = evaluate(f, b);
  }
  return b;
}

}  // namespace ptspec::numerics

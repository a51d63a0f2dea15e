#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <utility>

namespace ptspec::numerics {

using Complex = std::complex<double>;

/// Coefficient q(x) of psi'' + q(x) psi = 0.
using Coefficient = std::function<Complex(double)>;

/// Solution value and slope at x.  The true solution is y * exp(log_scale);
/// the integrator divides by a common positive factor whenever the state
/// grows past the rescale threshold.
struct OdeState {
  double x = 0.0;
  Complex y;
  Complex yp;
  double log_scale = 0.0;

  Complex value() const;
  Complex derivative() const;
};

struct OdeOptions {
  /// Target local error relative to the solution's WKB amplitude.
  double rel_tol = 1e-10;
  /// The state is rescaled when max(|y|, |y'|) exceeds this.  Must be > 1.
  double rescale_threshold = 1e100;
  long max_steps = 20'000'000;
};

/// K solutions of the same equation integrated in lockstep: one step
/// sequence and one shared log_scale, so every fixed linear combination
/// keeps its zeros and sign structure under rescaling.
template <std::size_t K>
struct LinearState {
  double x = 0.0;
  std::array<Complex, K> y{};
  std::array<Complex, K> yp{};
  double log_scale = 0.0;
};

struct OdeStats {
  long accepted = 0;
  long rejected = 0;
  int rescalings = 0;
};

/// Integrate psi'' + q psi = 0 from x0 to x1 (x1 < x0 integrates leftward)
/// with an embedded Dormand-Prince 5(4) pair.
///
/// Throws IntegrationError on step underflow, on a non-finite q(x), or when
/// max_steps is exhausted; the error carries the offending x.
template <std::size_t K>
LinearState<K> propagate_linear(const Coefficient& q, double x0, double x1,
                                const std::array<Complex, K>& y0,
                                const std::array<Complex, K>& yp0,
                                const OdeOptions& opts = {},
                                OdeStats* stats = nullptr);

/// Single-solution convenience wrapper; init = (psi(x0), psi'(x0)).
OdeState propagate_ode(const Coefficient& q, double x0, double x1,
                       std::pair<Complex, Complex> init,
                       double rescale_threshold = 1e100,
                       double rel_tol = 1e-10);

extern template LinearState<1> propagate_linear<1>(
    const Coefficient&, double, double, const std::array<Complex, 1>&,
    const std::array<Complex, 1>&, const OdeOptions&, OdeStats*);
extern template LinearState<2> propagate_linear<2>(
    const Coefficient&, double, double, const std::array<Complex, 2>&,
    const std::array<Complex, 2>&, const OdeOptions&, OdeStats*);

}  // namespace ptspec::numerics

#pragma once

#include <string_view>
#include <utility>

#include "ptspec/numerics/quadrature.hpp"

namespace ptspec {

/// Which quantization rule produced a semiclassical energy.
enum class WkbMethod {
  kBB,             ///< minimal turning points, sin(pi/N)
  kMxtp,           ///< maximal turning points, piecewise delta
  kHermitian,      ///< real |x|^N well
  kActionNumeric,  ///< numerical action integral inverted by root finding
};

std::string_view to_string(WkbMethod method);

struct WkbEnergy {
  int n = 0;
  double big_n = 0.0;
  double energy = 0.0;
  WkbMethod method = WkbMethod::kMxtp;
};

/// [Gamma(3/2+1/N) sqrt(pi) (n+1/2) / (delta Gamma(1+1/N))]^(2N/(N+2))
/// evaluated in the log domain.  The three closed forms differ only in delta.
double quantized_energy(double big_n, int n, double delta);

/// delta = sin(pi/N).  Requires N >= 2, n >= 0.
WkbEnergy energy_bb(double big_n, int n);

/// delta = delta_mxtp(N).  Requires 2 <= N <= 12, n >= 0.
WkbEnergy energy_mxtp(double big_n, int n);

/// delta = 1.  Requires N >= 1, n >= 0.
WkbEnergy energy_hermitian(double big_n, int n);

/// I(E) = 2 E^(1/2+1/N) delta int_0^1 sqrt(1 - s^N) ds between the maximal
/// turning pair, with the s-integral done by adaptive quadrature (no gamma
/// functions), so it is an independent check of energy_mxtp.
double action_integral(double big_n, double energy,
                       const numerics::QuadratureSpec& quad = {});

/// Solves action_integral(N, E) = pi (n + 1/2) for E by bracketing and
/// refine_root.  Throws ConvergenceError if no bracket is found.
WkbEnergy invert_action(double big_n, int n);

/// Richardson-extrapolated one-sided slopes dE/dN of energy_mxtp at N*:
/// slope = 2 D(h/2) - D(h) with D the forward (right) or backward (left)
/// difference quotient.  Returns {left, right}.
std::pair<double, double> left_right_derivative(double n_star, int n,
                                                double h = 1e-5);

}  // namespace ptspec

#include "ptspec/semiclassical.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ptspec/errors.hpp"
#include "ptspec/numerics/roots.hpp"
#include "ptspec/numerics/special.hpp"
#include "ptspec/potential.hpp"

namespace ptspec {

namespace {

constexpr double kPi = std::numbers::pi;

void require_level(int n, const char* where) {
  if (n < 0) {
    std::ostringstream msg;
    msg << where << ": quantum number must be >= 0, got " << n;
    throw DomainError(msg.str());
  }
}

void require_n_at_least(double big_n, double min, const char* where) {
  if (!(big_n >= min) || !std::isfinite(big_n)) {
    std::ostringstream msg;
    msg << where << ": N must be >= " << min << ", got " << big_n;
    throw DomainError(msg.str());
  }
}

}  // namespace

std::string_view to_string(WkbMethod method) {
  switch (method) {
    case WkbMethod::kBB:
      return "BB";
    case WkbMethod::kMxtp:
      return "MXTP";
    case WkbMethod::kHermitian:
      return "HERMITIAN";
    case WkbMethod::kActionNumeric:
      return "ACTION_NUMERIC";
  }
  return "?";
}

double quantized_energy(double big_n, int n, double delta) {
  const double log_base = std::log(numerics::gamma(1.5 + 1.0 / big_n)) +
                          0.5 * std::log(kPi) + std::log(n + 0.5) -
                          std::log(delta) -
                          std::log(numerics::gamma(1.0 + 1.0 / big_n));
  return std::exp(2.0 * big_n / (big_n + 2.0) * log_base);
}

WkbEnergy energy_bb(double big_n, int n) {
  require_n_at_least(big_n, 2.0, "energy_bb");
  require_level(n, "energy_bb");
  return {n, big_n, quantized_energy(big_n, n, std::sin(kPi / big_n)),
          WkbMethod::kBB};
}

WkbEnergy energy_mxtp(double big_n, int n) {
  require_level(n, "energy_mxtp");
  return {n, big_n, quantized_energy(big_n, n, delta_mxtp(big_n)),
          WkbMethod::kMxtp};
}

WkbEnergy energy_hermitian(double big_n, int n) {
  require_n_at_least(big_n, 1.0, "energy_hermitian");
  require_level(n, "energy_hermitian");
  return {n, big_n, quantized_energy(big_n, n, 1.0), WkbMethod::kHermitian};
}

double action_integral(double big_n, double energy,
                       const numerics::QuadratureSpec& quad) {
  const TurningPair pair = select_maximal_pair(PotentialSpec(big_n), energy);
  const double shape = numerics::integrate(
      [big_n](double s) { return std::sqrt(1.0 - std::pow(s, big_n)); }, 0.0,
      1.0, quad);
  return 2.0 * std::pow(energy, 0.5 + 1.0 / big_n) * pair.delta * shape;
}

WkbEnergy invert_action(double big_n, int n) {
  require_level(n, "invert_action");
  const double target = kPi * (n + 0.5);
  const auto residual = [&](double e) {
    return action_integral(big_n, e) - target;
  };
  // The action grows monotonically as E^(1/2+1/N).
  double lo = 1.0;
  double hi = 1.0;
  int guard = 0;
  while (residual(lo) > 0.0) {
    lo *= 0.5;
    if (++guard > 200) throw ConvergenceError("invert_action: no lower bracket");
  }
  guard = 0;
  while (residual(hi) < 0.0) {
    hi *= 2.0;
    if (++guard > 200) throw ConvergenceError("invert_action: no upper bracket");
  }
  const double e = numerics::refine_root(residual, lo, hi, 1e-14 * hi);
  return {n, big_n, e, WkbMethod::kActionNumeric};
}

std::pair<double, double> left_right_derivative(double n_star, int n,
                                                double h) {
  if (!(h > 0.0)) throw DomainError("left_right_derivative: h must be > 0");
  const double e0 = energy_mxtp(n_star, n).energy;
  const auto one_sided = [&](double sign) {
    const double d1 = (energy_mxtp(n_star + sign * h, n).energy - e0) / (sign * h);
    const double d2 =
        (energy_mxtp(n_star + sign * h / 2.0, n).energy - e0) / (sign * h / 2.0);
    return 2.0 * d2 - d1;
  };
  return {one_sided(-1.0), one_sided(1.0)};
}

}  // namespace ptspec

#include "ptspec/potential.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

#include "ptspec/errors.hpp"

namespace ptspec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kResidualBound = 1e-10;
constexpr int kMaxK = 2;

void require_positive_energy(double energy, const char* where) {
  if (!(energy > 0.0) || !std::isfinite(energy)) {
    std::ostringstream msg;
    msg << where << ": energy must be positive, got " << energy;
    throw DomainError(msg.str());
  }
}

}  // namespace

Complex unit_phase_half_turns(double n) {
  // exp(i pi n / 2); exact for integer n so that integer exponents give
  // exactly real or imaginary potentials.
  double t = std::fmod(n / 2.0, 2.0);
  if (t < 0.0) t += 2.0;
  if (2.0 * t == std::floor(2.0 * t)) {
    switch (static_cast<int>(2.0 * t)) {
      case 0:
        return {1.0, 0.0};
      case 1:
        return {0.0, 1.0};
      case 2:
        return {-1.0, 0.0};
      case 3:
        return {0.0, -1.0};
      default:
        break;
    }
  }
  return {std::cos(kPi * t), std::sin(kPi * t)};
}

PotentialSpec::PotentialSpec(double n, bool allow_out_of_range) : n_(n) {
  if (!std::isfinite(n)) {
    throw DomainError("PotentialSpec: N must be finite");
  }
  if (n < kMinN || n > kMaxN) {
    std::ostringstream msg;
    msg << "PotentialSpec: N = " << n << " outside [" << kMinN << ", "
        << kMaxN << "]";
    if (!allow_out_of_range) throw DomainError(msg.str());
    std::clog << "warning: " << msg.str()
              << "; PT symmetry is exact only for N >= 2\n";
  }
}

RealLinePotential::RealLinePotential(const PotentialSpec& spec)
    : n_(spec.n()),
      cos_(unit_phase_half_turns(spec.n()).real()),
      sin_(unit_phase_half_turns(spec.n()).imag()) {}

Complex evaluate_potential(const PotentialSpec& spec, double x) {
  return RealLinePotential(spec)(x);
}

Complex evaluate_potential(const PotentialSpec& spec, Complex x) {
  if (x == Complex(0.0, 0.0)) return {0.0, 0.0};
  return -std::exp(spec.n() * std::log(Complex(0.0, 1.0) * x));
}

TurningPointSet turning_points(const PotentialSpec& spec, double energy) {
  require_positive_energy(energy, "turning_points");
  const double n = spec.n();
  const double radius = std::pow(energy, 1.0 / n);
  const double bound = kResidualBound * std::max(1.0, energy);

  TurningPointSet set;
  set.energy = energy;
  for (int k = 0; k <= kMaxK; ++k) {
    const double theta = (2 * k + 1) * kPi / n;
    // x_k = -i E^(1/N) e^(i theta)
    const Complex xk(radius * std::sin(theta), -radius * std::cos(theta));
    for (bool partner : {false, true}) {
      const Complex x = partner ? -std::conj(xk) : xk;
      const double residual =
          std::abs(evaluate_potential(spec, x) - Complex(energy, 0.0));
      TurningPoint tp{k, partner, x, residual};
      (residual <= bound ? set.points : set.rejected).push_back(tp);
    }
  }
  return set;
}

TurningPair select_maximal_pair(const PotentialSpec& spec, double energy) {
  const TurningPointSet set = turning_points(spec, energy);
  const double radius = std::pow(energy, 1.0 / spec.n());

  bool found = false;
  TurningPair best;
  for (const auto& tp : set.points) {
    if (tp.partner) continue;
    // both members of the pair must satisfy the equation
    bool partner_ok = false;
    for (const auto& other : set.points) {
      partner_ok |= other.partner && other.k == tp.k;
    }
    if (!partner_ok || tp.x.real() <= 0.0) continue;
    const double re = tp.x.real();
    const bool tie = found && std::abs(re - best.right.real()) <=
                                  1e-12 * std::max(re, best.right.real());
    if (!found || re > best.right.real() || tie) {
      // k ascends, so a tie keeps the larger k
      best = {-std::conj(tp.x), tp.x, tp.k, re / radius};
      found = true;
    }
  }
  if (!found) {
    std::ostringstream msg;
    msg << "select_maximal_pair: no valid turning pair for N = " << spec.n();
    throw DomainError(msg.str());
  }
  return best;
}

TurningPair minimal_pair(const PotentialSpec& spec, double energy) {
  require_positive_energy(energy, "minimal_pair");
  const double n = spec.n();
  const double radius = std::pow(energy, 1.0 / n);
  const Complex right = radius * std::exp(Complex(0.0, -kPi * (0.5 - 1.0 / n)));
  return {-std::conj(right), right, 0, right.real() / radius};
}

double delta_mxtp(double n) {
  if (!(n >= PotentialSpec::kMinN && n <= PotentialSpec::kMaxN)) {
    std::ostringstream msg;
    msg << "delta_mxtp: N = " << n << " outside [2, 12]";
    throw DomainError(msg.str());
  }
  const int big_k = n <= 4.0 ? 0 : (n <= 8.0 ? 1 : 2);
  return std::sin((2 * big_k + 1) * kPi / n);
}

}  // namespace ptspec

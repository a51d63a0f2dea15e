#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace ptspec {

using Complex = std::complex<double>;

/// The exponent N of V(x) = -(ix)^N in units 2mu = hbar^2 = 1, so the
/// Schroedinger operator is -d^2/dx^2 + V.
class PotentialSpec {
 public:
  static constexpr double kMinN = 2.0;
  static constexpr double kMaxN = 12.0;

  /// Throws DomainError unless 2 <= N <= 12.  With allow_out_of_range the
  /// range check only writes a warning to std::clog (PT symmetry is exact
  /// only for N >= 2).
  explicit PotentialSpec(double n, bool allow_out_of_range = false);

  double n() const noexcept { return n_; }

 private:
  double n_;
};

struct TurningPoint {
  int k = 0;
  /// false for x_k itself, true for its PT partner -conj(x_k).
  bool partner = false;
  Complex x;
  /// |-(ix)^N - E| with the principal branch.
  double residual = 0.0;
};

struct TurningPointSet {
  double energy = 0.0;
  std::vector<TurningPoint> points;
  /// Candidates x_k that fail -(ix_k)^N = E on the principal branch.
  std::vector<TurningPoint> rejected;
};

/// A PT-symmetric pair (-conj(x), x) with delta = Re(x) / E^(1/N).
struct TurningPair {
  Complex left;
  Complex right;
  int k = 0;
  double delta = 0.0;
};

/// exp(i N pi / 2), exact (0, +-1) for integer N.
Complex unit_phase_half_turns(double n);

/// V on the real line with the phase exp(i N pi/2) computed once; the hot
/// path of the shooting integrator.
class RealLinePotential {
 public:
  explicit RealLinePotential(const PotentialSpec& spec);

  Complex operator()(double x) const {
    if (x == 0.0) return {0.0, 0.0};
    const double mag = std::pow(std::abs(x), n_);
    const double re = -mag * cos_;
    const double im = -mag * sin_;
    return x > 0.0 ? Complex(re, im) : Complex(re, -im);
  }

 private:
  double n_;
  double cos_;
  double sin_;
};

/// V on the real line: -|x|^N exp(i N (pi/2) sign(x)), V(0) = 0.  Satisfies
/// V(-x) == conj(V(x)) bit for bit.
Complex evaluate_potential(const PotentialSpec& spec, double x);

/// V in the complex plane with the principal branch of (ix)^N; agrees with
/// the real-line overload for real x.
Complex evaluate_potential(const PotentialSpec& spec, Complex x);

/// Candidates x_k = -i E^(1/N) exp(i(2k+1)pi/N), k = 0, 1, 2, and their PT
/// partners.  Only points with residual <= 1e-10 max(1, E) are returned in
/// `points`.  Throws DomainError for E <= 0.
TurningPointSet turning_points(const PotentialSpec& spec, double energy);

/// The valid pair with the largest |Re x|.  Ties (N = 4, 8) go to the larger
/// k.  Throws DomainError for E <= 0.
TurningPair select_maximal_pair(const PotentialSpec& spec, double energy);

/// The k = 0 pair, x_+ = E^(1/N) exp(-i pi (1/2 - 1/N)) and
/// x_- = E^(1/N) exp(i pi (3/2 - 1/N)).
TurningPair minimal_pair(const PotentialSpec& spec, double energy);

/// sin((2K+1) pi / N) with K = 0 on [2,4], 1 on (4,8], 2 on (8,12].
/// Throws DomainError outside [2, 12].
double delta_mxtp(double n);

}  // namespace ptspec

#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "ptspec/numerics/dense.hpp"
#include "ptspec/potential.hpp"

namespace ptspec {

using numerics::CMatrix;
using numerics::RMatrix;

struct BasisOptions {
  std::size_t size = 400;
  double growth_factor = 1.25;
  /// Floor of the realness tolerance; the tolerance actually used is
  /// max(imag_tol, eps * ||H||_F * size).
  double imag_tol = 1e-6;
  double stability_tol = 1e-2;
  bool parallel = true;

  void validate() const;
  std::size_t grown_size() const;
};

struct AcceptedLevel {
  int n = 0;
  double energy = 0.0;
  /// |E(size) - E(grown size)|.
  double stability = 0.0;
};

struct BasisSpectrum {
  double big_n = 0.0;
  std::size_t size = 0;
  std::size_t grown_size = 0;
  std::vector<numerics::Complex> raw;
  std::vector<numerics::Complex> raw_grown;
  std::vector<AcceptedLevel> accepted;
  double imag_tol_used = 0.0;
  bool hermitian = false;
};

/// X = i x in the oscillator basis: X(n+1, n) = X(n, n+1) = i sqrt((n+1)/2).
CMatrix build_position_matrix(std::size_t size);

/// p(m, n) = (i/sqrt 2) [sqrt(n+1) delta(m, n+1) - sqrt(n) delta(m, n-1)],
/// m the row index.
CMatrix build_momentum_matrix(std::size_t size);

/// X^N for X = i S with S real symmetric tridiagonal.  Integer N uses
/// repeated multiplication, otherwise the spectral definition with the
/// same branch as the real-line potential.
CMatrix matrix_power_X(const CMatrix& x, double big_n);

/// Always the spectral route; kept for cross-checking the integer path.
CMatrix matrix_power_X_spectral(const CMatrix& x, double big_n);

/// H = p p - X^N.
CMatrix build_hamiltonian(const PotentialSpec& spec, std::size_t size);

BasisSpectrum spectrum(const PotentialSpec& spec, const BasisOptions& opts);

struct RawSpectrum {
  std::vector<numerics::Complex> values;
  /// ||H||_F
  double norm = 0.0;
  /// H exactly real; imaginary parts are then exactly zero.
  bool hermitian = false;
};

/// Unfiltered eigenvalues of H at one size.
RawSpectrum raw_spectrum(const PotentialSpec& spec, std::size_t size,
                         bool parallel = true);

/// max(floor, eps * norm * size).
double realness_tolerance(double floor, double norm, std::size_t size);

/// Row-major text dump, one matrix row per line, entries "re,im" separated
/// by single spaces.
void write_matrix(std::ostream& out, const CMatrix& m);

}  // namespace ptspec

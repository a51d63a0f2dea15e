#include "ptspec/hobasis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>

#include "ptspec/errors.hpp"
#include "ptspec/numerics/eigen.hpp"

namespace ptspec {

namespace {

using numerics::Complex;

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool is_integer(double v) { return v == std::floor(v); }

void check_size(std::size_t size) {
  if (size < 2) throw DomainError("basis size must be at least 2");
}

// Off-diagonal of S, where X = i S.
std::vector<double> position_offdiagonal(std::size_t size) {
  std::vector<double> off(size - 1);
  for (std::size_t k = 0; k + 1 < size; ++k) {
    off[k] = std::sqrt(static_cast<double>(k + 1) / 2.0);
  }
  return off;
}

// Extracts S from X = i S, insisting on the tridiagonal symmetric shape.
std::vector<double> extract_s(const CMatrix& x) {
  if (!x.square() || x.rows() < 2) {
    throw DomainError("matrix_power_X: X must be square with size >= 2");
  }
  const std::size_t n = x.rows();
  std::vector<double> off(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex v = x(i, j);
      const bool band = i + 1 == j || j + 1 == i;
      if (v.real() != 0.0 || (!band && v.imag() != 0.0)) {
        throw DomainError(
            "matrix_power_X: X must be i times a zero-diagonal tridiagonal");
      }
    }
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (x(k, k + 1) != x(k + 1, k)) {
      throw DomainError("matrix_power_X: X must be symmetric");
    }
    off[k] = x(k, k + 1).imag();
  }
  return off;
}

RMatrix tridiagonal_power(const std::vector<double>& off, int power) {
  const std::size_t n = off.size() + 1;
  const std::vector<double> diag(n, 0.0);
  RMatrix result = RMatrix::identity(n);
  for (int k = 0; k < power; ++k) {
    result = numerics::multiply_tridiagonal(result, off, diag, off);
  }
  return result;
}

CMatrix spectral_power(const std::vector<double>& off, double big_n) {
  const std::size_t n = off.size() + 1;
  const std::vector<double> diag(n, 0.0);
  const auto eig = numerics::eig_tridiagonal(diag, off, true);
  const Complex phase = unit_phase_half_turns(big_n);
  std::vector<Complex> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eig.values[k];
    if (lambda == 0.0) continue;
    const double mag = std::pow(std::abs(lambda), big_n);
    w[k] = mag * (lambda > 0.0 ? phase : std::conj(phase));
  }
  return numerics::similarity_diag(eig.vectors, w);
}

// p p is real: p = i B with B(k+1, k) = sqrt((k+1)/2), B(k, k+1) = -B(k+1, k),
// so p p = -B B, a pentadiagonal matrix.
RMatrix momentum_squared(std::size_t size) {
  const auto b = position_offdiagonal(size);
  RMatrix pp(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    double d = 0.0;
    if (i > 0) d += b[i - 1] * b[i - 1];
    if (i + 1 < size) d += b[i] * b[i];
    pp(i, i) = d;
    if (i + 2 < size) {
      pp(i, i + 2) = -b[i] * b[i + 1];
      pp(i + 2, i) = pp(i, i + 2);
    }
  }
  return pp;
}

struct SplitHamiltonian {
  RMatrix re;
  RMatrix im;
  bool real = false;
};

SplitHamiltonian split_hamiltonian(const PotentialSpec& spec,
                                   std::size_t size) {
  check_size(size);
  const auto off = position_offdiagonal(size);
  SplitHamiltonian h{momentum_squared(size), RMatrix(size, size), true};
  const double big_n = spec.n();
  if (is_integer(big_n)) {
    const int power = static_cast<int>(big_n);
    const RMatrix s_n = tridiagonal_power(off, power);
    // -X^N = -i^N S^N
    const Complex factor = -unit_phase_half_turns(big_n);
    RMatrix& target = factor.real() != 0.0 ? h.re : h.im;
    const double sign = factor.real() != 0.0 ? factor.real() : factor.imag();
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) target(i, j) += sign * s_n(i, j);
    }
    h.real = factor.imag() == 0.0;
  } else {
    const CMatrix x_n = spectral_power(off, big_n);
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) {
        h.re(i, j) -= x_n(i, j).real();
        h.im(i, j) = -x_n(i, j).imag();
      }
    }
    h.real = false;
  }
  return h;
}

// H_jk picks up (-1)^(j+k) under conjugation, so with D = diag(1, i, 1, i, ...)
// the similarity D H D^-1 is real: same-parity entries keep the real part,
// mixed-parity entries carry the imaginary part with a sign.
RMatrix pt_real_form(const SplitHamiltonian& h) {
  const std::size_t n = h.re.rows();
  RMatrix r(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      if ((j ^ k) % 2 == 0) {
        r(j, k) = h.re(j, k);
      } else {
        r(j, k) = j % 2 == 0 ? h.im(j, k) : -h.im(j, k);
      }
    }
  return r;
}

CMatrix combine(const SplitHamiltonian& h) {
  CMatrix out(h.re.rows(), h.re.cols());
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) {
      out(i, j) = Complex(h.re(i, j), h.im(i, j));
    }
  }
  return out;
}

}  // namespace

RawSpectrum raw_spectrum(const PotentialSpec& spec, std::size_t size,
                         bool parallel) {
  const auto h = split_hamiltonian(spec, size);
  RawSpectrum run;
  run.hermitian = h.real;
  if (h.real) {
    run.norm = numerics::frobenius_norm(h.re);
    const auto eig = numerics::eig_symmetric(h.re, false);
    run.values.assign(eig.values.begin(), eig.values.end());
  } else {
    run.norm = numerics::frobenius_norm(combine(h));
    const RMatrix r = pt_real_form(h);
    const auto eig = parallel ? numerics::eig_dense_real(r)
                              : numerics::eig_dense_real_serial(r);
    run.values = eig.eigenvalues;
  }
  return run;
}

double realness_tolerance(double floor, double norm, std::size_t size) {
  return std::max(floor, kEps * norm * static_cast<double>(size));
}

void BasisOptions::validate() const {
  if (size < 8) throw DomainError("BasisOptions: size must be at least 8");
  if (!(growth_factor > 1.0)) {
    throw DomainError("BasisOptions: growth_factor must exceed 1");
  }
  if (!(imag_tol > 0.0)) throw DomainError("BasisOptions: imag_tol must be positive");
  if (!(stability_tol > 0.0)) {
    throw DomainError("BasisOptions: stability_tol must be positive");
  }
}

std::size_t BasisOptions::grown_size() const {
  return static_cast<std::size_t>(
      std::ceil(growth_factor * static_cast<double>(size) - 1e-9));
}

CMatrix build_position_matrix(std::size_t size) {
  check_size(size);
  const auto off = position_offdiagonal(size);
  CMatrix x(size, size);
  for (std::size_t k = 0; k + 1 < size; ++k) {
    x(k, k + 1) = Complex(0.0, off[k]);
    x(k + 1, k) = Complex(0.0, off[k]);
  }
  return x;
}

CMatrix build_momentum_matrix(std::size_t size) {
  check_size(size);
  const auto off = position_offdiagonal(size);
  CMatrix p(size, size);
  for (std::size_t k = 0; k + 1 < size; ++k) {
    p(k + 1, k) = Complex(0.0, off[k]);
    p(k, k + 1) = Complex(0.0, -off[k]);
  }
  return p;
}

CMatrix matrix_power_X(const CMatrix& x, double big_n) {
  const auto off = extract_s(x);
  if (!is_integer(big_n)) return spectral_power(off, big_n);
  if (big_n < 0.0) throw DomainError("matrix_power_X: N must be non-negative");
  const RMatrix s_n = tridiagonal_power(off, static_cast<int>(big_n));
  const Complex phase = unit_phase_half_turns(big_n);
  CMatrix out(s_n.rows(), s_n.cols());
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) {
      out(i, j) = phase * s_n(i, j);
    }
  }
  return out;
}

CMatrix matrix_power_X_spectral(const CMatrix& x, double big_n) {
  return spectral_power(extract_s(x), big_n);
}

CMatrix build_hamiltonian(const PotentialSpec& spec, std::size_t size) {
  return combine(split_hamiltonian(spec, size));
}

BasisSpectrum spectrum(const PotentialSpec& spec, const BasisOptions& opts) {
  opts.validate();
  BasisSpectrum out;
  out.big_n = spec.n();
  out.size = opts.size;
  out.grown_size = opts.grown_size();

  const RawSpectrum base = raw_spectrum(spec, out.size, opts.parallel);
  const RawSpectrum grown = raw_spectrum(spec, out.grown_size, opts.parallel);
  out.raw = base.values;
  out.raw_grown = grown.values;
  out.hermitian = base.hermitian;

  const double tol_base =
      realness_tolerance(opts.imag_tol, base.norm, out.size);
  const double tol_grown =
      realness_tolerance(opts.imag_tol, grown.norm, out.grown_size);
  out.imag_tol_used = tol_base;

  std::vector<Complex> candidates;
  for (const auto& e : base.values) {
    if (std::abs(e.imag()) <= tol_base) candidates.push_back(e);
  }
  std::sort(candidates.begin(), candidates.end(),
            [](Complex a, Complex b) { return a.real() < b.real(); });

  std::vector<bool> claimed(grown.values.size(), false);
  for (const auto& e : candidates) {
    std::size_t best = grown.values.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < grown.values.size(); ++j) {
      if (claimed[j]) continue;
      const double dist = std::abs(grown.values[j] - e);
      const bool better =
          dist < best_dist ||
          (dist == best_dist && best < grown.values.size() &&
           std::abs(grown.values[j].imag()) <
               std::abs(grown.values[best].imag()));
      if (better) {
        best = j;
        best_dist = dist;
      }
    }
    if (best == grown.values.size()) continue;
    const Complex partner = grown.values[best];
    if (std::abs(partner.imag()) > tol_grown) continue;
    const double stability = std::abs(partner.real() - e.real());
    if (stability > opts.stability_tol) continue;
    claimed[best] = true;
    out.accepted.push_back(
        {static_cast<int>(out.accepted.size()), e.real(), stability});
  }
  return out;
}

void write_matrix(std::ostream& out, const CMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << fmt::format("{:.17g},{:.17g}", m(i, j).real(), m(i, j).imag());
    }
    out << '\n';
  }
}

}  // namespace ptspec

#include "ptspec/numerics/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace ptspec::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// In-place reduction to upper Hessenberg form by Householder reflections
// H = I - 2 v v^H / (v^H v).
void hessenberg_reduce(CMatrix& a, bool parallel) {
  const std::size_t n = a.rows();
  if (n < 3) return;
  std::vector<Complex> v(n);
  std::vector<Complex> w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double tail = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) tail += std::norm(a(i, k));
    if (tail == 0.0) continue;
    const Complex alpha = a(k + 1, k);
    const double xnorm = std::sqrt(tail + std::norm(alpha));
    const Complex phase =
        std::abs(alpha) == 0.0 ? Complex(1.0) : alpha / std::abs(alpha);
    const Complex beta = -phase * xnorm;
    v[k + 1] = alpha - beta;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = a(i, k);
    const double vnorm2 = tail + std::norm(v[k + 1]);
    const double factor = 2.0 / vnorm2;

    // Left: rows k+1.., columns k+1..
    const long c0 = static_cast<long>(k + 1);
    const long cn = static_cast<long>(n);
#pragma omp parallel for schedule(static) if (parallel)
    for (long jl = c0; jl < cn; ++jl) {
      const auto j = static_cast<std::size_t>(jl);
      Complex s = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * a(i, j);
      s *= factor;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= v[i] * s;
    }
    a(k + 1, k) = beta;
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;

    // Right: all rows, columns k+1..
#pragma omp parallel for schedule(static) if (parallel)
    for (long il = 0; il < cn; ++il) {
      const auto i = static_cast<std::size_t>(il);
      auto row = a.row(i);
      Complex s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += row[j] * v[j];
      s *= factor;
      for (std::size_t j = k + 1; j < n; ++j) row[j] -= s * std::conj(v[j]);
    }
  }
}

// Diagonal similarity by powers of two so that each row and column pair
// has comparable norm.  Exact in floating point.
void balance_real(RMatrix& a) {
  const std::size_t n = a.rows();
  constexpr double kRadix = 2.0;
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) {
          c += std::abs(a(j, i));
          r += std::abs(a(i, j));
        }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / kRadix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= kRadix;
        c *= kRadix * kRadix;
      }
      g = r * kRadix;
      while (c > g) {
        f /= kRadix;
        c /= kRadix * kRadix;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        g = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

// Real counterpart of hessenberg_reduce.
void hessenberg_reduce_real(RMatrix& a, bool parallel) {
  const std::size_t n = a.rows();
  if (n < 3) return;
  std::vector<double> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double tail = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) tail += a(i, k) * a(i, k);
    if (tail == 0.0) continue;
    const double alpha = a(k + 1, k);
    const double xnorm = std::sqrt(tail + alpha * alpha);
    const double beta = alpha >= 0.0 ? -xnorm : xnorm;
    v[k + 1] = alpha - beta;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = a(i, k);
    const double factor = 2.0 / (tail + v[k + 1] * v[k + 1]);

    const long c0 = static_cast<long>(k + 1);
    const long cn = static_cast<long>(n);
#pragma omp parallel for schedule(static) if (parallel)
    for (long jl = c0; jl < cn; ++jl) {
      const auto j = static_cast<std::size_t>(jl);
      double s = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) s += v[i] * a(i, j);
      s *= factor;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= v[i] * s;
    }
    a(k + 1, k) = beta;
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;

#pragma omp parallel for schedule(static) if (parallel)
    for (long il = 0; il < cn; ++il) {
      auto row = a.row(static_cast<std::size_t>(il));
      double s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += row[j] * v[j];
      s *= factor;
      for (std::size_t j = k + 1; j < n; ++j) row[j] -= s * v[j];
    }
  }
}

// Francis double-shift QR on a real upper Hessenberg matrix, eigenvalues
// only.  Complex eigenvalues come out of 2x2 blocks as exact conjugate pairs.
EigenResult hessenberg_qr_real(RMatrix& a, double norm) {
  const long n = static_cast<long>(a.rows());
  auto at = [&](long i, long j) -> double& {
    return a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  };
  EigenResult result;
  result.eigenvalues.assign(a.rows(), Complex(0.0));
  std::vector<bool> done(a.rows(), false);
  auto store = [&](long i, Complex z) {
    result.eigenvalues[static_cast<std::size_t>(i)] = z;
    done[static_cast<std::size_t>(i)] = true;
  };

  double anorm = 0.0;
  for (long i = 0; i < n; ++i)
    for (long j = std::max(i - 1, 0L); j < n; ++j) anorm += std::abs(at(i, j));
  double worst_dropped = 0.0;
  double shift = 0.0;
  long nn = n - 1;
  int its = 0;
  int total = 0;
  const int max_total = 30 * std::max(10, static_cast<int>(n));

  while (nn >= 0) {
    long l = nn;
    for (; l > 0; --l) {
      double s = std::abs(at(l - 1, l - 1)) + std::abs(at(l, l));
      if (s == 0.0) s = anorm;
      if (std::abs(at(l, l - 1)) <= kEps * s) {
        worst_dropped = std::max(worst_dropped, std::abs(at(l, l - 1)));
        at(l, l - 1) = 0.0;
        break;
      }
    }
    double x = at(nn, nn);
    if (l == nn) {
      store(nn, x + shift);
      --nn;
      its = 0;
      continue;
    }
    double y = at(nn - 1, nn - 1);
    double w = at(nn, nn - 1) * at(nn - 1, nn);
    if (l == nn - 1) {
      const double p = 0.5 * (y - x);
      const double q = p * p + w;
      double z = std::sqrt(std::abs(q));
      x += shift;
      if (q >= 0.0) {
        z = p + std::copysign(z, p);
        store(nn - 1, x + z);
        store(nn, z != 0.0 ? x - w / z : x + z);
      } else {
        store(nn, Complex(x + p, -z));
        store(nn - 1, Complex(x + p, z));
      }
      nn -= 2;
      its = 0;
      continue;
    }
    if (total >= max_total) {
      std::vector<Complex> partial;
      for (std::size_t i = 0; i < done.size(); ++i)
        if (done[i]) partial.push_back(result.eigenvalues[i]);
      throw EigenConvergenceError(
          "eig_dense_real: QR iteration did not converge for eigenvalue " +
              std::to_string(nn) + " after " + std::to_string(total) +
              " sweeps",
          std::move(partial));
    }
    if (its > 0 && its % 10 == 0) {
      // Exceptional shift, alternating between the bottom and the top of
      // the active block.
      const bool top = its % 20 == 10;
      const double base = top ? at(l, l) : x;
      shift += base;
      for (long i = 0; i <= nn; ++i) at(i, i) -= base;
      const double s =
          top ? std::abs(at(l + 1, l)) + std::abs(at(l + 2, l + 1))
              : std::abs(at(nn, nn - 1)) + std::abs(at(nn - 1, nn - 2));
      x = y = 0.75 * s;
      w = -0.4375 * s * s;
    }
    ++its;
    ++total;

    long m = nn - 2;
    double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
    for (; m >= l; --m) {
      z = at(m, m);
      r = x - z;
      double s = y - z;
      p = (r * s - w) / at(m + 1, m) + at(m, m + 1);
      q = at(m + 1, m + 1) - z - r - s;
      r = at(m + 2, m + 1);
      s = std::abs(p) + std::abs(q) + std::abs(r);
      p /= s;
      q /= s;
      r /= s;
      if (m == l) break;
      const double u = std::abs(at(m, m - 1)) * (std::abs(q) + std::abs(r));
      const double v = std::abs(p) * (std::abs(at(m - 1, m - 1)) + std::abs(z) +
                                      std::abs(at(m + 1, m + 1)));
      if (u <= kEps * v) break;
    }
    for (long i = m; i < nn - 1; ++i) {
      at(i + 2, i) = 0.0;
      if (i != m) at(i + 2, i - 1) = 0.0;
    }
    for (long k = m; k < nn; ++k) {
      if (k != m) {
        p = at(k, k - 1);
        q = at(k + 1, k - 1);
        r = k + 1 != nn ? at(k + 2, k - 1) : 0.0;
        x = std::abs(p) + std::abs(q) + std::abs(r);
        if (x != 0.0) {
          p /= x;
          q /= x;
          r /= x;
        }
      }
      const double s = std::copysign(std::sqrt(p * p + q * q + r * r), p);
      if (s == 0.0) continue;
      if (k == m) {
        if (l != m) at(k, k - 1) = -at(k, k - 1);
      } else {
        at(k, k - 1) = -s * x;
      }
      p += s;
      x = p / s;
      y = q / s;
      z = r / s;
      q /= p;
      r /= p;
      for (long j = k; j <= nn; ++j) {
        p = at(k, j) + q * at(k + 1, j);
        if (k + 1 != nn) {
          p += r * at(k + 2, j);
          at(k + 2, j) -= p * z;
        }
        at(k + 1, j) -= p * y;
        at(k, j) -= p * x;
      }
      const long last = std::min(nn, k + 3);
      for (long i = l; i <= last; ++i) {
        p = x * at(i, k) + y * at(i, k + 1);
        if (k + 1 != nn) {
          p += z * at(i, k + 2);
          at(i, k + 2) -= p * r;
        }
        at(i, k + 1) -= p * q;
        at(i, k) -= p;
      }
    }
  }
  result.residual_norm =
      norm > 0.0 ? std::max(kEps, worst_dropped / norm) : kEps;
  return result;
}

// Shifted QR on an upper Hessenberg matrix, eigenvalues only.
EigenResult hessenberg_qr(CMatrix& h, double norm) {
  const std::size_t n = h.rows();
  EigenResult result;
  result.eigenvalues.assign(n, Complex(0.0));
  std::vector<bool> done(n, false);
  double worst_dropped = 0.0;

  std::vector<double> cs(n);
  std::vector<Complex> sn(n);

  long hi = static_cast<long>(n) - 1;
  int iter = 0;
  int total_iter = 0;
  const int max_iter_per_value = 60;

  while (hi >= 0) {
    long l = hi;
    while (l > 0) {
      const auto lu = static_cast<std::size_t>(l);
      double scale = std::abs(h(lu - 1, lu - 1)) + std::abs(h(lu, lu));
      if (scale == 0.0) scale = norm;
      if (std::abs(h(lu, lu - 1)) <= kEps * scale) {
        worst_dropped = std::max(worst_dropped, std::abs(h(lu, lu - 1)));
        h(lu, lu - 1) = 0.0;
        break;
      }
      --l;
    }
    const auto hu = static_cast<std::size_t>(hi);
    if (l == hi) {
      result.eigenvalues[hu] = h(hu, hu);
      done[hu] = true;
      --hi;
      iter = 0;
      continue;
    }
    if (++iter > max_iter_per_value) {
      std::vector<Complex> partial;
      for (std::size_t i = 0; i < n; ++i)
        if (done[i]) partial.push_back(result.eigenvalues[i]);
      throw EigenConvergenceError(
          "eig_dense_complex: QR iteration did not converge for eigenvalue " +
              std::to_string(hi) + " after " + std::to_string(total_iter) +
              " sweeps",
          std::move(partial));
    }
    ++total_iter;

    // Shift
    const Complex a = h(hu - 1, hu - 1);
    const Complex b = h(hu - 1, hu);
    const Complex c = h(hu, hu - 1);
    const Complex d = h(hu, hu);
    Complex mu;
    if (iter % 10 == 0) {
      mu = d + 1.5 * std::abs(c);
    } else {
      const Complex half = 0.5 * (a - d);
      const Complex disc = std::sqrt(half * half + b * c);
      const Complex m1 = 0.5 * (a + d) + disc;
      const Complex m2 = 0.5 * (a + d) - disc;
      mu = std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
    }

    const auto lo = static_cast<std::size_t>(l);
    for (std::size_t i = lo; i <= hu; ++i) h(i, i) -= mu;
    // H - mu I = Q R via Givens rotations
    for (std::size_t k = lo; k < hu; ++k) {
      const Complex x = h(k, k);
      const Complex y = h(k + 1, k);
      const double r = std::hypot(std::abs(x), std::abs(y));
      double cr;
      Complex s;
      if (r == 0.0) {
        cr = 1.0;
        s = 0.0;
      } else if (std::abs(x) == 0.0) {
        cr = 0.0;
        s = std::conj(y) / r;
      } else {
        cr = std::abs(x) / r;
        s = (x / std::abs(x)) * std::conj(y) / r;
      }
      cs[k] = cr;
      sn[k] = s;
      auto rk = h.row(k);
      auto rk1 = h.row(k + 1);
      for (std::size_t j = k; j <= hu; ++j) {
        const Complex t0 = rk[j];
        const Complex t1 = rk1[j];
        rk[j] = cr * t0 + s * t1;
        rk1[j] = -std::conj(s) * t0 + cr * t1;
      }
    }
    // R Q
    for (std::size_t k = lo; k < hu; ++k) {
      const double cr = cs[k];
      const Complex s = sn[k];
      const std::size_t last = std::min(k + 1, hu);
      for (std::size_t i = lo; i <= last; ++i) {
        const Complex t0 = h(i, k);
        const Complex t1 = h(i, k + 1);
        h(i, k) = cr * t0 + std::conj(s) * t1;
        h(i, k + 1) = -s * t0 + cr * t1;
      }
    }
    for (std::size_t i = lo; i <= hu; ++i) h(i, i) += mu;
  }

  result.residual_norm =
      norm > 0.0 ? std::max(kEps, worst_dropped / norm) : kEps;
  return result;
}

EigenResult eig_impl(const CMatrix& m, bool parallel) {
  if (!m.square() || m.rows() == 0) {
    throw DomainError("eig_dense_complex: matrix must be square and non-empty");
  }
  for (const auto& v : m.data()) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw DomainError("eig_dense_complex: non-finite matrix entry");
    }
  }
  const double norm = frobenius_norm(m);
  CMatrix h = m;
  hessenberg_reduce(h, parallel);
  return hessenberg_qr(h, norm);
}

// Numerical Recipes style tred2: reduction from the last row upward.
void tridiagonalize(RMatrix& z, std::vector<double>& d, std::vector<double>& e,
                    bool vectors) {
  const std::size_t n = z.rows();
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (std::size_t k = 0; k < i; ++k) scale += std::abs(z(i, k));
      if (scale == 0.0) {
        e[i] = z(i, l);
      } else {
        for (std::size_t k = 0; k < i; ++k) {
          z(i, k) /= scale;
          h += z(i, k) * z(i, k);
        }
        double f = z(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        z(i, l) = f - g;
        f = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
          if (vectors) z(j, i) = z(i, j) / h;
          g = 0.0;
          for (std::size_t k = 0; k <= j; ++k) g += z(j, k) * z(i, k);
          for (std::size_t k = j + 1; k < i; ++k) g += z(k, j) * z(i, k);
          e[j] = g / h;
          f += e[j] * z(i, j);
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j < i; ++j) {
          f = z(i, j);
          e[j] = g = e[j] - hh * f;
          for (std::size_t k = 0; k <= j; ++k) {
            z(j, k) -= f * e[k] + g * z(i, k);
          }
        }
      }
    } else {
      e[i] = z(i, l);
    }
    d[i] = h;
  }
  if (vectors) d[0] = 0.0;
  e[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (vectors) {
      if (d[i] != 0.0) {
        for (std::size_t j = 0; j < i; ++j) {
          double g = 0.0;
          for (std::size_t k = 0; k < i; ++k) g += z(i, k) * z(k, j);
          for (std::size_t k = 0; k < i; ++k) z(k, j) -= g * z(k, i);
        }
      }
      d[i] = z(i, i);
      z(i, i) = 1.0;
      for (std::size_t j = 0; j < i; ++j) z(j, i) = z(i, j) = 0.0;
    } else {
      d[i] = z(i, i);
    }
  }
}

// Implicit QL on (d, e) where e[i] couples i-1 and i (e[0] unused).
void tql(std::vector<double>& d, std::vector<double>& e, RMatrix* z) {
  const std::size_t n = d.size();
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kEps * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) {
          throw ConvergenceError(
              "eig_symmetric: implicit QL did not converge at index " +
              std::to_string(l));
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (std::size_t ii = m; ii-- > l;) {
          const double f = s * e[ii];
          const double b = c * e[ii];
          e[ii + 1] = r = std::hypot(f, g);
          if (r == 0.0) {
            d[ii + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[ii + 1] - p;
          r = (d[ii] - g) * s + 2.0 * c * b;
          p = s * r;
          d[ii + 1] = g + p;
          g = c * r - b;
          if (z) {
            for (std::size_t k = 0; k < n; ++k) {
              const double t = (*z)(k, ii + 1);
              (*z)(k, ii + 1) = s * (*z)(k, ii) + c * t;
              (*z)(k, ii) = c * (*z)(k, ii) - s * t;
            }
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

// Number of eigenvalues below x (Sturm sequence of the LDL^T pivots).
// e[i] couples i-1 and i.
std::size_t sturm_count(const std::vector<double>& d,
                        const std::vector<double>& e2, double x,
                        double pivmin) {
  std::size_t count = 0;
  double q = d[0] - x;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < d.size(); ++i) {
    q = d[i] - x - e2[i] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

// All eigenvalues by bisection, ascending.  Bisection keeps small
// eigenvalues of graded tridiagonals to high relative accuracy, where QL
// deflation at the small end stalls on rounding noise from the large end.
std::vector<double> bisect_all(const std::vector<double>& d,
                               const std::vector<double>& e) {
  const std::size_t n = d.size();
  std::vector<double> e2(n, 0.0);
  double lo = d[0];
  double hi = d[0];
  double emax2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? std::abs(e[i]) : 0.0;
    const double right = i + 1 < n ? std::abs(e[i + 1]) : 0.0;
    lo = std::min(lo, d[i] - left - right);
    hi = std::max(hi, d[i] + left + right);
    if (i > 0) {
      e2[i] = e[i] * e[i];
      emax2 = std::max(emax2, e2[i]);
    }
  }
  const double span = std::max(std::abs(lo), std::abs(hi));
  lo -= 2.0 * kEps * span + std::numeric_limits<double>::min();
  hi += 2.0 * kEps * span + std::numeric_limits<double>::min();
  const double pivmin =
      std::numeric_limits<double>::min() * std::max(1.0, emax2);

  std::vector<double> values(n);
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (long kl = 0; kl < count; ++kl) {
    const auto k = static_cast<std::size_t>(kl);
    // eigenvalue k lies in [a, b): count(a) <= k < count(b)
    double a = lo;
    double b = hi;
    for (int it = 0; it < 2000; ++it) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (b - a <= 2.0 * kEps * std::max(std::abs(a), std::abs(b))) break;
      if (sturm_count(d, e2, mid, pivmin) > k) {
        b = mid;
      } else {
        a = mid;
      }
    }
    values[k] = 0.5 * (a + b);
  }
  return values;
}

SymmetricEigen sorted(std::vector<double> d, const RMatrix* z) {
  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  SymmetricEigen out;
  out.values.reserve(d.size());
  for (auto k : order) out.values.push_back(d[k]);
  if (z) {
    out.vectors = RMatrix(z->rows(), d.size());
    for (std::size_t j = 0; j < order.size(); ++j)
      for (std::size_t i = 0; i < z->rows(); ++i)
        out.vectors(i, j) = (*z)(i, order[j]);
  }
  return out;
}

EigenResult eig_real_impl(const RMatrix& m, bool parallel) {
  if (!m.square() || m.rows() == 0) {
    throw DomainError("eig_dense_real: matrix must be square and non-empty");
  }
  for (double v : m.data()) {
    if (!std::isfinite(v)) throw DomainError("eig_dense_real: non-finite matrix entry");
  }
  const double norm = frobenius_norm(m);
  RMatrix h = m;
  balance_real(h);
  hessenberg_reduce_real(h, parallel);
  return hessenberg_qr_real(h, norm);
}

}  // namespace

EigenResult eig_dense_complex(const CMatrix& m) { return eig_impl(m, true); }

EigenResult eig_dense_real(const RMatrix& m) { return eig_real_impl(m, true); }

EigenResult eig_dense_real_serial(const RMatrix& m) {
  return eig_real_impl(m, false);
}

EigenResult eig_dense_complex_serial(const CMatrix& m) {
  return eig_impl(m, false);
}

SymmetricEigen eig_symmetric(const RMatrix& a, bool want_vectors) {
  if (!a.square() || a.rows() == 0) {
    throw DomainError("eig_symmetric: matrix must be square and non-empty");
  }
  RMatrix z = a;
  std::vector<double> d;
  std::vector<double> e;
  if (a.rows() == 1) {
    return {{a(0, 0)}, want_vectors ? RMatrix::identity(1) : RMatrix{}};
  }
  tridiagonalize(z, d, e, want_vectors);
  if (!want_vectors) {
    return {bisect_all(d, e), {}};
  }
  tql(d, e, want_vectors ? &z : nullptr);
  return sorted(std::move(d), want_vectors ? &z : nullptr);
}

SymmetricEigen eig_tridiagonal(std::span<const double> diag,
                               std::span<const double> off,
                               bool want_vectors) {
  const std::size_t n = diag.size();
  if (n == 0 || off.size() + 1 != n) {
    throw DomainError("eig_tridiagonal: off-diagonal must have n-1 entries");
  }
  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) e[i] = off[i - 1];
  RMatrix z;
  if (want_vectors) z = RMatrix::identity(n);
  tql(d, e, want_vectors ? &z : nullptr);
  return sorted(std::move(d), want_vectors ? &z : nullptr);
}

}  // namespace ptspec::numerics

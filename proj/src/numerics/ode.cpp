#include "ptspec/numerics/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ptspec/errors.hpp"

namespace ptspec::numerics {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                 a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

template <std::size_t K>
struct Vec {
  std::array<Complex, K> y{};
  std::array<Complex, K> yp{};
};

[[noreturn]] void fail(const std::string& what, double x) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "propagate_ode: " << what << " at x = " << x;
  throw IntegrationError(msg.str(), x);
}

Complex eval_q(const Coefficient& q, double x) {
  const Complex v = q(x);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    fail("coefficient q(x) is not finite", x);
  }
  return v;
}

template <std::size_t K>
Vec<K> rhs(Complex qx, const Vec<K>& z) {
  Vec<K> d;
  for (std::size_t j = 0; j < K; ++j) {
    d.y[j] = z.yp[j];
    d.yp[j] = -qx * z.y[j];
  }
  return d;
}

// z + h * sum(w_i k_i), written out to avoid temporaries in the hot loop.
template <std::size_t K, std::size_t M>
Vec<K> combine(const Vec<K>& z, double h, const std::array<double, M>& w,
               const std::array<const Vec<K>*, M>& k) {
  Vec<K> out = z;
  for (std::size_t i = 0; i < M; ++i) {
    const double hw = h * w[i];
    if (hw == 0.0) continue;
    for (std::size_t j = 0; j < K; ++j) {
      out.y[j] += hw * k[i]->y[j];
      out.yp[j] += hw * k[i]->yp[j];
    }
  }
  return out;
}

template <std::size_t K>
double max_abs(const Vec<K>& z) {
  double m = 0.0;
  for (std::size_t j = 0; j < K; ++j) {
    m = std::max({m, std::abs(z.y[j]), std::abs(z.yp[j])});
  }
  return m;
}

}  // namespace

Complex OdeState::value() const { return y * std::exp(log_scale); }
Complex OdeState::derivative() const { return yp * std::exp(log_scale); }

template <std::size_t K>
LinearState<K> propagate_linear(const Coefficient& q, double x0, double x1,
                                const std::array<Complex, K>& y0,
                                const std::array<Complex, K>& yp0,
                                const OdeOptions& opts, OdeStats* stats) {
  if (!(opts.rescale_threshold > 1.0)) {
    fail("rescale_threshold must exceed 1", x0);
  }
  if (!(opts.rel_tol > 0.0)) {
    fail("rel_tol must be positive", x0);
  }
  LinearState<K> out;
  out.x = x0;
  out.y = y0;
  out.yp = yp0;
  if (x0 == x1) return out;

  const double direction = x1 > x0 ? 1.0 : -1.0;
  const double span = std::abs(x1 - x0);
  constexpr double eps = std::numeric_limits<double>::epsilon();

  Vec<K> z{y0, yp0};
  double x = x0;
  Complex qx = eval_q(q, x);
  Vec<K> k1 = rhs(qx, z);
  double h = direction *
             std::min(span, 0.05 / (std::sqrt(std::abs(qx)) + 1.0));
  double log_scale = 0.0;
  OdeStats local;

  while (true) {
    bool last = false;
    if (std::abs(h) >= std::abs(x1 - x)) {
      h = x1 - x;
      last = true;
    }
    if (std::abs(h) < 16.0 * eps * std::max(1.0, std::abs(x))) {
      fail("step size underflow", x);
    }
    if (local.accepted + local.rejected >= opts.max_steps) {
      fail("maximum number of steps exceeded", x);
    }

    const Vec<K> k2 = rhs(eval_q(q, x + c2 * h),
                          combine<K, 1>(z, h, {a21}, {&k1}));
    const Vec<K> k3 = rhs(eval_q(q, x + c3 * h),
                          combine<K, 2>(z, h, {a31, a32}, {&k1, &k2}));
    const Vec<K> k4 =
        rhs(eval_q(q, x + c4 * h),
            combine<K, 3>(z, h, {a41, a42, a43}, {&k1, &k2, &k3}));
    const Vec<K> k5 = rhs(
        eval_q(q, x + c5 * h),
        combine<K, 4>(z, h, {a51, a52, a53, a54}, {&k1, &k2, &k3, &k4}));
    const double x_new = last ? x1 : x + h;
    const Complex q_new = eval_q(q, x_new);
    const Vec<K> k6 =
        rhs(q_new, combine<K, 5>(z, h, {a61, a62, a63, a64, a65},
                                            {&k1, &k2, &k3, &k4, &k5}));
    const Vec<K> z_new = combine<K, 5>(z, h, {b1, b3, b4, b5, b6},
                                       {&k1, &k3, &k4, &k5, &k6});
    const Vec<K> k7 = rhs(q_new, z_new);
    const Vec<K> err = combine<K, 6>(Vec<K>{}, h, {e1, e3, e4, e5, e6, e7},
                                     {&k1, &k3, &k4, &k5, &k6, &k7});

    // Error measured against each solution's WKB amplitude max(|y|, |y'|/k)
    // with local wavenumber k = sqrt|q| + 1.
    const double kappa = std::sqrt(std::abs(q_new)) + 1.0;
    double ratio = 0.0;
    for (std::size_t j = 0; j < K; ++j) {
      const double amp = std::max(
          {std::abs(z.y[j]), std::abs(z.yp[j]) / kappa, std::abs(z_new.y[j]),
           std::abs(z_new.yp[j]) / kappa,
           std::numeric_limits<double>::min()});
      ratio = std::max({ratio, std::abs(err.y[j]) / amp,
                        std::abs(err.yp[j]) / (kappa * amp)});
    }
    ratio /= opts.rel_tol;
    if (!std::isfinite(ratio)) {
      fail("non-finite solution", x);
    }

    if (ratio <= 1.0) {
      ++local.accepted;
      x = x_new;
      z = z_new;
      k1 = k7;
      const double m = max_abs(z);
      if (m > opts.rescale_threshold) {
        // Power-of-two factor: exact, so scaled and unscaled runs take
        // identical steps.
        const int e = std::ilogb(m);
        for (std::size_t j = 0; j < K; ++j) {
          z.y[j] = std::ldexp(1.0, -e) * z.y[j];
          z.yp[j] = std::ldexp(1.0, -e) * z.yp[j];
          k1.y[j] = std::ldexp(1.0, -e) * k1.y[j];
          k1.yp[j] = std::ldexp(1.0, -e) * k1.yp[j];
        }
        log_scale += e * std::numbers::ln2;
        ++local.rescalings;
      }
      if (last) break;
      const double grow =
          ratio == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(ratio, -0.2));
      h *= std::max(0.2, grow);
    } else {
      ++local.rejected;
      h *= std::max(0.2, 0.9 * std::pow(ratio, -0.2));
    }
  }

  out.x = x1;
  out.y = z.y;
  out.yp = z.yp;
  out.log_scale = log_scale;
  if (stats) *stats = local;
  return out;
}

template LinearState<1> propagate_linear<1>(const Coefficient&, double, double,
                                            const std::array<Complex, 1>&,
                                            const std::array<Complex, 1>&,
                                            const OdeOptions&, OdeStats*);
template LinearState<2> propagate_linear<2>(const Coefficient&, double, double,
                                            const std::array<Complex, 2>&,
                                            const std::array<Complex, 2>&,
                                            const OdeOptions&, OdeStats*);

OdeState propagate_ode(const Coefficient& q, double x0, double x1,
                       std::pair<Complex, Complex> init,
                       double rescale_threshold, double rel_tol) {
  OdeOptions opts;
  opts.rescale_threshold = rescale_threshold;
  opts.rel_tol = rel_tol;
  const auto s = propagate_linear<1>(q, x0, x1, {init.first}, {init.second},
                                     opts);
  return {s.x, s.y[0], s.yp[0], s.log_scale};
}

}  // namespace ptspec::numerics

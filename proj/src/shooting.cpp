#include "ptspec/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

#include "ptspec/errors.hpp"
#include "ptspec/numerics/roots.hpp"
#include "ptspec/semiclassical.hpp"

namespace ptspec {

namespace {

using numerics::Complex;
using numerics::OdeState;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

numerics::OdeOptions ode_options(const ShootingOptions& opts) {
  numerics::OdeOptions o;
  o.rel_tol = opts.local_ode_tol;
  o.rescale_threshold = opts.rescale_threshold;
  return o;
}

// Runs body(i) for i in [0, count), in parallel when asked; the first
// exception is rethrown on the calling thread.
template <class Body>
void for_each_index(std::size_t count, bool parallel, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct Normalized {
  Complex u;
  Complex v;
};

Normalized normalized_end(const FundamentalPair& p) {
  const double norm = std::hypot(std::abs(p.u.y), std::abs(p.v.y));
  if (!(norm > 0.0)) return {Complex(1.0), Complex(0.0)};
  return {p.u.y / norm, p.v.y / norm};
}

}  // namespace

void ShootingOptions::validate() const {
  const auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError(std::string("ShootingOptions: ") + what +
                        " must be positive");
    }
  };
  positive(scan_e_max, "scan_e_max");
  positive(root_tol, "root_tol");
  positive(d_convergence_tol, "d_convergence_tol");
  positive(local_ode_tol, "local_ode_tol");
  positive(min_scan_step, "min_scan_step");
  if (d_policy == DPolicy::kFixed) positive(d_fixed, "d_fixed");
  if (!(d_growth > 1.0)) throw DomainError("ShootingOptions: d_growth must exceed 1");
  if (scan_step < 0.0) throw DomainError("ShootingOptions: scan_step must be >= 0");
}

FundamentalPair fundamental_pair(const PotentialSpec& spec, double energy,
                                 double d, Side side,
                                 const ShootingOptions& opts) {
  if (!(d > 0.0)) throw DomainError("fundamental_pair: d must be positive");
  const RealLinePotential potential(spec);
  const Complex e(energy, 0.0);
  const numerics::Coefficient q = [&](double x) { return e - potential(x); };
  const double x1 = side == Side::kRight ? d : -d;
  try {
    const auto s = numerics::propagate_linear<2>(
        q, 0.0, x1, {Complex(1.0), Complex(0.0)}, {Complex(0.0), Complex(1.0)},
        ode_options(opts));
    return {OdeState{s.x, s.y[0], s.yp[0], s.log_scale},
            OdeState{s.x, s.y[1], s.yp[1], s.log_scale}};
  } catch (const IntegrationError& err) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "fundamental_pair(N=" << spec.n() << ", E=" << energy << ", side="
        << (side == Side::kRight ? "right" : "left") << "): " << err.what();
    throw IntegrationError(msg.str(), err.x());
  }
}

MissValue miss_function(const PotentialSpec& spec, double energy, double d,
                        const ShootingOptions& opts) {
  const auto right = normalized_end(
      fundamental_pair(spec, energy, d, Side::kRight, opts));
  const auto left = normalized_end(
      fundamental_pair(spec, energy, d, Side::kLeft, opts));
  const Complex det = right.u * left.v - left.u * right.v;
  return {det.real(), std::abs(det.imag())};
}

Complex miss_function_ratio(const PotentialSpec& spec, double energy, double d,
                            bool inverted, const ShootingOptions& opts) {
  const auto r = fundamental_pair(spec, energy, d, Side::kRight, opts);
  const auto l = fundamental_pair(spec, energy, d, Side::kLeft, opts);
  if (inverted) return r.v.y / r.u.y - l.v.y / l.u.y;
  return r.u.y / r.v.y - l.u.y / l.v.y;
}

double choose_d(const PotentialSpec& spec, double e_max,
                const DChoice& choice) {
  if (!(e_max > 0.0)) throw DomainError("choose_d: E_max must be positive");
  const double d =
      std::max(choice.multiplier * std::pow(e_max, 1.0 / spec.n()),
               choice.floor);
  return std::min(d, choice.cap);
}

double matching_distance(const PotentialSpec& spec,
                         const ShootingOptions& opts) {
  return opts.d_policy == DPolicy::kFixed
             ? opts.d_fixed
             : choose_d(spec, opts.scan_e_max, opts.d_choice);
}

std::vector<double> scan_grid(const PotentialSpec& spec,
                              const ShootingOptions& opts) {
  double step = opts.scan_step;
  if (step == 0.0) {
    double spacing = std::numeric_limits<double>::infinity();
    double prev = energy_mxtp(spec.n(), 0).energy;
    for (int n = 1; n < 10000; ++n) {
      const double next = energy_mxtp(spec.n(), n).energy;
      spacing = std::min(spacing, next - prev);
      if (prev > opts.scan_e_max) break;
      prev = next;
    }
    step = std::max(0.5 * spacing, opts.min_scan_step);
  }
  std::vector<double> grid;
  for (long j = 0;; ++j) {
    const double e = (static_cast<double>(j) + 0.5) * step;
    if (e > opts.scan_e_max) break;
    grid.push_back(e);
  }
  return grid;
}

MissFunctionTrace scan_miss_function(const PotentialSpec& spec,
                                     const std::vector<double>& energies,
                                     double d, const ShootingOptions& opts) {
  MissFunctionTrace trace;
  trace.samples.resize(energies.size());
  for_each_index(energies.size(), opts.parallel, [&](std::size_t i) {
    const MissValue m = miss_function(spec, energies[i], d, opts);
    trace.samples[i] = {energies[i], m.f, m.im_residual};
  });
  return trace;
}

MissFunctionTrace scan_miss_function_serial(
    const PotentialSpec& spec, const std::vector<double>& energies, double d,
    const ShootingOptions& opts) {
  MissFunctionTrace trace;
  trace.samples.reserve(energies.size());
  for (double e : energies) {
    const MissValue m = miss_function(spec, e, d, opts);
    trace.samples.push_back({e, m.f, m.im_residual});
  }
  return trace;
}

std::vector<double> roots_from_trace(const PotentialSpec& spec,
                                     const MissFunctionTrace& trace, double d,
                                     const ShootingOptions& opts) {
  struct Bracket {
    double lo;
    double hi;
  };
  std::vector<Bracket> brackets;
  const auto& s = trace.samples;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].f == 0.0) {
      brackets.push_back({s[i].energy, s[i].energy});
    } else if (i + 1 < s.size() && s[i + 1].f != 0.0 &&
               std::signbit(s[i].f) != std::signbit(s[i + 1].f)) {
      brackets.push_back({s[i].energy, s[i + 1].energy});
    }
  }
  std::vector<double> roots(brackets.size());
  const auto f = [&](double e) { return miss_function(spec, e, d, opts).f; };
  for_each_index(brackets.size(), opts.parallel, [&](std::size_t i) {
    const auto& b = brackets[i];
    roots[i] = b.lo == b.hi ? b.lo
                            : numerics::refine_root(f, b.lo, b.hi,
                                                    opts.root_tol);
  });
  return roots;
}

bool near_isolated_point(double big_n, double window) {
  return std::abs(big_n - 4.0) < window || std::abs(big_n - 8.0) < window;
}

double estimate_e_max(double big_n, int levels) {
  if (levels < 1) throw DomainError("estimate_e_max: levels must be >= 1");
  return 0.5 * (energy_mxtp(big_n, levels - 1).energy +
                energy_mxtp(big_n, levels).energy);
}

namespace {

// Root of F(., d) closest to `guess`, searched in expanding windows up to
// max_offset.  NaN when none is found.
double relocate_root(const PotentialSpec& spec, double guess, double d,
                     double max_offset, const ShootingOptions& opts) {
  const auto f = [&](double e) { return miss_function(spec, e, d, opts).f; };
  const double f0 = f(guess);
  if (f0 == 0.0) return guess;
  double delta = std::max(10.0 * opts.root_tol, 1e-3);
  double best = kNaN;
  while (delta <= max_offset) {
    for (double sign : {-1.0, 1.0}) {
      const double e = guess + sign * delta;
      if (e <= 0.0) continue;
      const double fe = f(e);
      if (fe == 0.0 || std::signbit(fe) != std::signbit(f0)) {
        const double lo = std::min(guess, e);
        const double hi = std::max(guess, e);
        const double root =
            fe == 0.0 ? e : numerics::refine_root(f, lo, hi, opts.root_tol);
        if (std::isnan(best) ||
            std::abs(root - guess) < std::abs(best - guess)) {
          best = root;
        }
      }
    }
    if (!std::isnan(best)) return best;
    delta *= 4.0;
  }
  return best;
}

}  // namespace

ShootingResult find_eigenvalues(const PotentialSpec& spec,
                                const ShootingOptions& opts) {
  opts.validate();
  ShootingResult result;
  result.big_n = spec.n();
  result.d = matching_distance(spec, opts);
  result.unreliable = near_isolated_point(spec.n(), opts.ip_window);

  const std::vector<double> grid = scan_grid(spec, opts);
  result.trace = scan_miss_function(spec, grid, result.d, opts);
  const std::vector<double> roots =
      roots_from_trace(spec, result.trace, result.d, opts);

  const double step = grid.size() > 1 ? grid[1] - grid[0] : opts.scan_e_max;
  const double grown = result.d * opts.d_growth;
  result.eigenvalues.resize(roots.size());
  for_each_index(roots.size(), opts.parallel, [&](std::size_t i) {
    DirichletEigenvalue ev;
    ev.n = static_cast<int>(i);
    ev.energy = roots[i];
    ev.d_used = result.d;
    ev.energy_grown_d = relocate_root(spec, roots[i], grown, 0.5 * step, opts);
    ev.d_shift_change = std::isnan(ev.energy_grown_d)
                            ? std::numeric_limits<double>::infinity()
                            : std::abs(ev.energy_grown_d - roots[i]);
    ev.converged = ev.d_shift_change <= opts.d_convergence_tol;
    result.eigenvalues[i] = ev;
  });

  std::ostringstream diag;
  if (roots.empty()) {
    diag << "no sign change of the miss function in (0, " << opts.scan_e_max
         << "]";
  }
  if (result.unreliable) {
    if (!diag.str().empty()) diag << "; ";
    diag << "N = " << spec.n() << " is within " << opts.ip_window
         << " of an isolated point, results unreliable";
  }
  result.diagnostic = diag.str();
  return result;
}

}  // namespace ptspec

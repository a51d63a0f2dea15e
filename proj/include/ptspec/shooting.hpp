#pragma once

#include <string>
#include <vector>

#include "ptspec/numerics/ode.hpp"
#include "ptspec/potential.hpp"

namespace ptspec {

enum class Side { kLeft, kRight };

enum class DPolicy { kFixed, kAuto };

/// Rule for the asymptotic matching distance d.
struct DChoice {
  double multiplier = 3.0;
  double floor = 6.0;
  double cap = 10.0;
};

struct ShootingOptions {
  DPolicy d_policy = DPolicy::kAuto;
  double d_fixed = 10.0;
  DChoice d_choice{};
  double scan_e_max = 20.0;
  /// Energy grid spacing; 0 selects half the smallest semiclassical level
  /// spacing below scan_e_max (never below min_scan_step).
  double scan_step = 0.0;
  double min_scan_step = 0.05;
  double root_tol = 1e-6;
  double d_convergence_tol = 1e-2;
  /// Convergence re-run uses d * d_growth.
  double d_growth = 1.2;
  double local_ode_tol = 1e-10;
  double rescale_threshold = 1e100;
  /// |N - 4| or |N - 8| below this marks results unreliable.
  double ip_window = 0.15;
  bool parallel = true;

  /// Throws DomainError on non-positive tolerances or scan range.
  void validate() const;
};

/// u (u(0)=1, u'(0)=0) and v (v(0)=0, v'(0)=1) at x = +-d.  Both share one
/// log_scale so u*v' - u'*v (the Wronskian, 1) is recovered as
/// (u.y*v.yp - u.yp*v.y) * exp(2*log_scale).
struct FundamentalPair {
  numerics::OdeState u;
  numerics::OdeState v;
};

FundamentalPair fundamental_pair(const PotentialSpec& spec, double energy,
                                 double d, Side side,
                                 const ShootingOptions& opts = {});

/// Normalized Dirichlet determinant.
///
/// D = u(d) v(-d) - u(-d) v(d) divided by
/// sqrt((|u(d)|^2 + |v(d)|^2) (|u(-d)|^2 + |v(-d)|^2)), a positive factor
/// that keeps F in [-1, 1] without moving its zeros.  For real E and exact
/// PT symmetry D is real; im_residual = |Im F|.
struct MissValue {
  double f = 0.0;
  double im_residual = 0.0;
};

MissValue miss_function(const PotentialSpec& spec, double energy, double d,
                        const ShootingOptions& opts = {});

/// Ratio form u(d)/v(d) - u(-d)/v(-d) (or v/u - v/u with inverted = true).
/// Same zeros as the determinant wherever the denominators do not vanish.
Complex miss_function_ratio(const PotentialSpec& spec, double energy,
                            double d, bool inverted = false,
                            const ShootingOptions& opts = {});

/// max(multiplier * E_max^(1/N), floor), capped.
double choose_d(const PotentialSpec& spec, double e_max,
                const DChoice& choice = {});

/// The d actually used by find_eigenvalues for these options.
double matching_distance(const PotentialSpec& spec,
                         const ShootingOptions& opts);

struct MissSample {
  double energy = 0.0;
  double f = 0.0;
  double im_residual = 0.0;
};

struct MissFunctionTrace {
  std::vector<MissSample> samples;
};

/// Energy grid (j + 1/2) * step for j = 0.. while <= e_max, where step is
/// opts.scan_step or derived from the semiclassical level spacing.
std::vector<double> scan_grid(const PotentialSpec& spec,
                              const ShootingOptions& opts);

/// F on a grid.  OpenMP-parallel over grid points; the result does not
/// depend on scheduling.
MissFunctionTrace scan_miss_function(const PotentialSpec& spec,
                                     const std::vector<double>& energies,
                                     double d, const ShootingOptions& opts);

/// Single-threaded reference for scan_miss_function.
MissFunctionTrace scan_miss_function_serial(
    const PotentialSpec& spec, const std::vector<double>& energies, double d,
    const ShootingOptions& opts);

struct DirichletEigenvalue {
  int n = 0;
  double energy = 0.0;
  double d_used = 0.0;
  /// Root re-located at d * d_growth; NaN when none was found nearby.
  double energy_grown_d = 0.0;
  /// |E(d) - E(d * d_growth)|, infinite when no partner root was found.
  double d_shift_change = 0.0;
  bool converged = false;
};

struct ShootingResult {
  double big_n = 0.0;
  double d = 0.0;
  std::vector<DirichletEigenvalue> eigenvalues;
  MissFunctionTrace trace;
  /// N inside an isolated-point window.
  bool unreliable = false;
  std::string diagnostic;
};

/// Scan, bracket sign changes of F, refine each with refine_root, then
/// re-locate each root at d * d_growth.  Sorted ascending, n = 0, 1, ...
ShootingResult find_eigenvalues(const PotentialSpec& spec,
                                const ShootingOptions& opts);

/// Roots of F(., d) from sign changes on a precomputed trace.
std::vector<double> roots_from_trace(const PotentialSpec& spec,
                                     const MissFunctionTrace& trace, double d,
                                     const ShootingOptions& opts);

/// True when N is within opts.ip_window of 4 or 8.
bool near_isolated_point(double big_n, double window);

/// Scan ceiling that should cover `levels` states: midway between the
/// semiclassical E_{levels-1} and E_levels.
double estimate_e_max(double big_n, int levels);

}  // namespace ptspec

#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <utility>

#include "ptspec/numerics/dense.hpp"

namespace ptspec {

enum class ToyModel { kA, kB, kC, kD };

std::string_view to_string(ToyModel model);
/// Parses "A".."D" (case-insensitive).
std::optional<ToyModel> parse_toy_model(std::string_view tag);

using EigenPair = std::pair<numerics::Complex, numerics::Complex>;

numerics::CMatrix toy_matrix(ToyModel model, double lambda);

/// Printed closed forms; (E1, E2) with E1 the lower branch.
EigenPair toy_closed_form(ToyModel model, double lambda);

/// Numerically diagonalized, sorted by real part then imaginary part.
EigenPair toy_numeric(ToyModel model, double lambda);

enum class PointKind { kEP, kIP, kAnalytic };

std::string_view to_string(PointKind kind);

struct PointClass {
  double lambda_star = 0.0;
  PointKind kind = PointKind::kAnalytic;
  /// Extrapolated one-sided slopes of E1; +-inf on a diverging side, NaN on
  /// a side where the eigenvalues are complex.
  double left_slope = 0.0;
  double right_slope = 0.0;
  bool complex_side = false;
};

/// Classifies lambda_star for the lower branch E1 from one-sided slopes at
/// steps h and h/2.
PointClass classify_point(ToyModel model, double lambda_star, double h = 1e-4);

/// |central difference dE1/dlambda - <psi1|dB/dlambda|psi1>| for model B.
double hft_residual(double lambda, double h = 1e-4);

}  // namespace ptspec

#include "ptspec/toymodels.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "ptspec/errors.hpp"
#include "ptspec/numerics/eigen.hpp"

namespace ptspec {

namespace {

using numerics::Complex;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const double kSqrt2 = std::sqrt(2.0);

bool by_real_then_imag(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

EigenPair ordered(Complex a, Complex b) {
  return by_real_then_imag(b, a) ? EigenPair{b, a} : EigenPair{a, b};
}

// E1 when real, nullopt when the pair has left the real axis.
std::optional<double> lower_real(ToyModel model, double lambda) {
  const auto [e1, e2] = toy_numeric(model, lambda);
  const double scale = std::max(1.0, std::abs(e1) + std::abs(e2));
  if (std::abs(e1.imag()) > 1e-9 * scale) return std::nullopt;
  return e1.real();
}

struct Side {
  std::optional<double> coarse;
  std::optional<double> fine;
};

Side one_sided(ToyModel model, double lambda_star, double e_star, double h,
               double sign) {
  Side s;
  const auto far = lower_real(model, lambda_star + sign * h);
  const auto near = lower_real(model, lambda_star + sign * h / 2.0);
  if (far) s.coarse = sign * (*far - e_star) / h;
  if (near) s.fine = sign * (*near - e_star) / (h / 2.0);
  return s;
}

bool diverges(const Side& s) {
  if (!s.coarse || !s.fine) return false;
  const double a = std::abs(*s.coarse);
  const double b = std::abs(*s.fine);
  // Square-root singularity: |slope| grows like h^(-1/2).  The 1% slack
  // absorbs the O(h) correction to the leading term.
  return a > 0.0 && b >= 0.99 * kSqrt2 * a && b > 1.0;
}

double limit(const Side& s) {
  if (!s.coarse || !s.fine) return kNaN;
  return 2.0 * *s.fine - *s.coarse;
}

}  // namespace

std::string_view to_string(ToyModel model) {
  switch (model) {
    case ToyModel::kA: return "A";
    case ToyModel::kB: return "B";
    case ToyModel::kC: return "C";
    case ToyModel::kD: return "D";
  }
  return "?";
}

std::optional<ToyModel> parse_toy_model(std::string_view tag) {
  if (tag.size() != 1) return std::nullopt;
  switch (std::toupper(static_cast<unsigned char>(tag[0]))) {
    case 'A': return ToyModel::kA;
    case 'B': return ToyModel::kB;
    case 'C': return ToyModel::kC;
    case 'D': return ToyModel::kD;
    default: return std::nullopt;
  }
}

std::string_view to_string(PointKind kind) {
  switch (kind) {
    case PointKind::kEP: return "EP";
    case PointKind::kIP: return "IP";
    case PointKind::kAnalytic: return "ANALYTIC";
  }
  return "?";
}

numerics::CMatrix toy_matrix(ToyModel model, double lambda) {
  double upper = 0.0;
  double lower = 0.0;
  switch (model) {
    case ToyModel::kA: upper = 2.0 - lambda; lower = 2.0 + lambda; break;
    case ToyModel::kB: upper = lower = lambda - 2.0; break;
    case ToyModel::kC: upper = lower = lambda * lambda; break;
    case ToyModel::kD: upper = 4.0 * lambda; lower = lambda; break;
  }
  numerics::CMatrix m(2, 2);
  m(0, 0) = m(1, 1) = 5.0;
  m(0, 1) = upper;
  m(1, 0) = lower;
  return m;
}

EigenPair toy_closed_form(ToyModel model, double lambda) {
  switch (model) {
    case ToyModel::kA: {
      const Complex root = std::sqrt(Complex(4.0 - lambda * lambda, 0.0));
      return ordered(5.0 - root, 5.0 + root);
    }
    case ToyModel::kB: {
      const double r = std::abs(lambda - 2.0);
      return {5.0 - r, 5.0 + r};
    }
    case ToyModel::kC: {
      const double r = lambda * lambda;
      return {5.0 - r, 5.0 + r};
    }
    case ToyModel::kD: {
      const double r = 2.0 * std::abs(lambda);
      return {5.0 - r, 5.0 + r};
    }
  }
  throw DomainError("toy_closed_form: unknown model");
}

EigenPair toy_numeric(ToyModel model, double lambda) {
  const auto eig = numerics::eig_dense_complex(toy_matrix(model, lambda));
  return ordered(eig.eigenvalues.at(0), eig.eigenvalues.at(1));
}

PointClass classify_point(ToyModel model, double lambda_star, double h) {
  if (!(h > 0.0)) throw DomainError("classify_point: h must be positive");
  const auto e_star = lower_real(model, lambda_star);
  if (!e_star) {
    throw DomainError("classify_point: eigenvalues are complex at lambda*");
  }
  const Side left = one_sided(model, lambda_star, *e_star, h, -1.0);
  const Side right = one_sided(model, lambda_star, *e_star, h, 1.0);

  PointClass pc;
  pc.lambda_star = lambda_star;
  pc.complex_side = !left.fine || !right.fine;
  pc.left_slope = limit(left);
  pc.right_slope = limit(right);
  const bool left_div = diverges(left);
  const bool right_div = diverges(right);
  if (left_div) pc.left_slope = std::copysign(kInf, *left.fine);
  if (right_div) pc.right_slope = std::copysign(kInf, *right.fine);

  if (left_div || right_div) {
    pc.kind = PointKind::kEP;
  } else if (std::isfinite(pc.left_slope) && std::isfinite(pc.right_slope)) {
    const double gap = std::abs(pc.left_slope - pc.right_slope);
    const double scale = std::max(
        {1.0, std::abs(pc.left_slope), std::abs(pc.right_slope)});
    pc.kind = gap > 1e-3 * scale ? PointKind::kIP : PointKind::kAnalytic;
  } else {
    pc.kind = PointKind::kAnalytic;
  }
  return pc;
}

double hft_residual(double lambda, double h) {
  if (!(h > 0.0)) throw DomainError("hft_residual: h must be positive");
  if (std::abs(lambda - 2.0) <= h) {
    throw DomainError("hft_residual: B is degenerate at lambda = 2");
  }
  const auto e1 = [](double l) {
    return *lower_real(ToyModel::kB, l);
  };
  const double fd = (e1(lambda + h) - e1(lambda - h)) / (2.0 * h);

  numerics::RMatrix b(2, 2);
  b(0, 0) = b(1, 1) = 5.0;
  b(0, 1) = b(1, 0) = lambda - 2.0;
  const auto eig = numerics::eig_symmetric(b, true);
  const double p0 = eig.vectors(0, 0);
  const double p1 = eig.vectors(1, 0);
  const double norm = p0 * p0 + p1 * p1;
  const double expectation = 2.0 * p0 * p1 / norm;
  return std::abs(fd - expectation);
}

}  // namespace ptspec

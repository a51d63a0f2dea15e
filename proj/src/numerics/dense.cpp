#include "ptspec/numerics/dense.hpp"

#include <cmath>
#include <stdexcept>

namespace ptspec::numerics {

namespace {

template <class T>
void check_product(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("multiply: inner dimensions differ");
  }
}

// One output row; shared by the serial and parallel drivers so both
// accumulate in the same order.
template <class T>
void product_row(const Matrix<T>& a, const Matrix<T>& b, Matrix<T>& c,
                 std::size_t i) {
  auto out = c.row(i);
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const T aik = a(i, k);
    if (aik == T{}) continue;
    const auto brow = b.row(k);
    for (std::size_t j = 0; j < b.cols(); ++j) out[j] += aik * brow[j];
  }
}

template <class T>
Matrix<T> multiply_parallel_impl(const Matrix<T>& a, const Matrix<T>& b) {
  check_product(a, b);
  Matrix<T> c(a.rows(), b.cols());
  const auto rows = static_cast<long>(a.rows());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < rows; ++i) {
    product_row(a, b, c, static_cast<std::size_t>(i));
  }
  return c;
}

template <class T>
Matrix<T> multiply_serial_impl(const Matrix<T>& a, const Matrix<T>& b) {
  check_product(a, b);
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) product_row(a, b, c, i);
  return c;
}

template <class T>
double frobenius(const Matrix<T>& m) {
  double s = 0.0;
  for (const auto& v : m.data()) s += std::norm(v);
  return std::sqrt(s);
}

}  // namespace

double frobenius_norm(const CMatrix& m) { return frobenius(m); }
double frobenius_norm(const RMatrix& m) { return frobenius(m); }

double max_imag(const CMatrix& m) {
  double worst = 0.0;
  for (const auto& v : m.data()) worst = std::max(worst, std::abs(v.imag()));
  return worst;
}

CMatrix to_complex(const RMatrix& m) {
  CMatrix out(m.rows(), m.cols());
  for (std::size_t k = 0; k < m.data().size(); ++k) {
    out.data()[k] = m.data()[k];
  }
  return out;
}

RMatrix real_part(const CMatrix& m) {
  RMatrix out(m.rows(), m.cols());
  for (std::size_t k = 0; k < m.data().size(); ++k) {
    out.data()[k] = m.data()[k].real();
  }
  return out;
}

CMatrix transpose(const CMatrix& m) {
  CMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

RMatrix multiply(const RMatrix& a, const RMatrix& b) {
  return multiply_parallel_impl(a, b);
}
CMatrix multiply(const CMatrix& a, const CMatrix& b) {
  return multiply_parallel_impl(a, b);
}
RMatrix multiply_serial(const RMatrix& a, const RMatrix& b) {
  return multiply_serial_impl(a, b);
}
CMatrix multiply_serial(const CMatrix& a, const CMatrix& b) {
  return multiply_serial_impl(a, b);
}

RMatrix multiply_tridiagonal(const RMatrix& a, std::span<const double> sub,
                             std::span<const double> diag,
                             std::span<const double> super) {
  const std::size_t n = diag.size();
  if (a.cols() != n || sub.size() + 1 != n || super.size() + 1 != n) {
    throw std::invalid_argument("multiply_tridiagonal: size mismatch");
  }
  RMatrix c(a.rows(), n);
  const auto rows = static_cast<long>(a.rows());
#pragma omp parallel for schedule(static)
  for (long il = 0; il < rows; ++il) {
    const auto i = static_cast<std::size_t>(il);
    for (std::size_t j = 0; j < n; ++j) {
      // column j of T has super[j-1] at row j-1, diag[j], sub[j] at row j+1
      double s = a(i, j) * diag[j];
      if (j > 0) s += a(i, j - 1) * super[j - 1];
      if (j + 1 < n) s += a(i, j + 1) * sub[j];
      c(i, j) = s;
    }
  }
  return c;
}

CMatrix similarity_diag(const RMatrix& q, std::span<const Complex> w) {
  const std::size_t n = q.rows();
  if (q.cols() != w.size()) {
    throw std::invalid_argument("similarity_diag: size mismatch");
  }
  // Real and imaginary parts are separate real products so no complex
  // rounding mixes them.
  RMatrix qr(n, q.cols());
  RMatrix qi(n, q.cols());
  RMatrix qt(q.cols(), n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < q.cols(); ++k) {
      qr(i, k) = q(i, k) * w[k].real();
      qi(i, k) = q(i, k) * w[k].imag();
      qt(k, i) = q(i, k);
    }
  }
  const RMatrix re = multiply(qr, qt);
  const RMatrix im = multiply(qi, qt);
  CMatrix out(n, n);
  for (std::size_t k = 0; k < out.data().size(); ++k) {
    out.data()[k] = Complex(re.data()[k], im.data()[k]);
  }
  return out;
}

}  // namespace ptspec::numerics

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ptspec::numerics {

using Complex = std::complex<double>;

/// Row-major dense matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RMatrix = Matrix<double>;
using CMatrix = Matrix<Complex>;

/// Frobenius norm.
double frobenius_norm(const CMatrix& m);
double frobenius_norm(const RMatrix& m);

/// Largest |Im(m_ij)|.
double max_imag(const CMatrix& m);

CMatrix to_complex(const RMatrix& m);
RMatrix real_part(const CMatrix& m);
CMatrix transpose(const CMatrix& m);

/// Dense products.  The default entry points are OpenMP-parallel over output
/// rows; the *_serial variants are the single-threaded reference and must
/// produce bit-identical results (each output element is accumulated in the
/// same order by exactly one thread).
RMatrix multiply(const RMatrix& a, const RMatrix& b);
CMatrix multiply(const CMatrix& a, const CMatrix& b);
RMatrix multiply_serial(const RMatrix& a, const RMatrix& b);
CMatrix multiply_serial(const CMatrix& a, const CMatrix& b);

/// a * T where T is tridiagonal (sub, diag, super); O(n^2).
RMatrix multiply_tridiagonal(const RMatrix& a, std::span<const double> sub,
                             std::span<const double> diag,
                             std::span<const double> super);

/// Q * diag(w) * Q^T for real Q and complex weights.
CMatrix similarity_diag(const RMatrix& q, std::span<const Complex> w);

}  // namespace ptspec::numerics

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ptspec/errors.hpp"
#include "ptspec/numerics/dense.hpp"

namespace ptspec::numerics {

struct EigenResult {
  std::vector<Complex> eigenvalues;
  /// Backward-error proxy: largest deflated subdiagonal entry relative to
  /// ||M||_F, floored at machine epsilon.
  double residual_norm = 0.0;
};

/// QR iteration ran out of sweeps.  eigenvalues() holds those deflated so far.
class EigenConvergenceError : public ConvergenceError {
 public:
  EigenConvergenceError(const std::string& what, std::vector<Complex> partial)
      : ConvergenceError(what), partial_(std::move(partial)) {}
  const std::vector<Complex>& eigenvalues() const noexcept { return partial_; }

 private:
  std::vector<Complex> partial_;
};

/// All eigenvalues of a general complex square matrix: Householder
/// reduction to upper Hessenberg form, then single-shift complex QR with
/// Wilkinson shifts and exceptional shifts on stagnation.  Order unspecified.
EigenResult eig_dense_complex(const CMatrix& m);

/// Reference variant with the Hessenberg reduction run single-threaded.
EigenResult eig_dense_complex_serial(const CMatrix& m);

/// All eigenvalues of a general real square matrix: Householder reduction to
/// upper Hessenberg form, then Francis double-shift QR.  Real eigenvalues
/// have exactly zero imaginary part and complex ones come in exact conjugate
/// pairs.  Order unspecified.
EigenResult eig_dense_real(const RMatrix& m);

/// Reference variant with the Hessenberg reduction run single-threaded.
EigenResult eig_dense_real_serial(const RMatrix& m);

/// Eigenvalues ascending, eigenvectors as columns (empty when not requested).
struct SymmetricEigen {
  std::vector<double> values;
  RMatrix vectors;
};

/// Real symmetric matrix (lower triangle is read).  Householder
/// tridiagonalization from the last row upward, then Sturm-sequence
/// bisection for eigenvalues only or implicit QL when vectors are wanted.
/// Both keep small eigenvalues of matrices graded large toward the
/// bottom-right accurate.
SymmetricEigen eig_symmetric(const RMatrix& a, bool want_vectors = false);

/// Symmetric tridiagonal matrix with diagonal `diag` and off-diagonal `off`
/// (off.size() == diag.size() - 1).
SymmetricEigen eig_tridiagonal(std::span<const double> diag,
                               std::span<const double> off,
                               bool want_vectors = false);

}  // namespace ptspec::numerics

#include "nep/dense.hpp"

#include <lapacke.h>

#include <cmath>
#include <limits>
#include <span>

#include "nep/errors.hpp"
#include "nep/kernels.hpp"

namespace nep::dense {

Complex GeneralizedEigen::value(Index j) const {
  if (beta[j] == Complex(0.0))
    return {std::numeric_limits<double>::infinity(), 0.0};
  return alpha[j] / beta[j];
}

bool GeneralizedEigen::finite(Index j) const {
  return std::abs(beta[j]) > 0.0 &&
         std::abs(alpha[j]) < 1e300 * std::abs(beta[j]);
}

GeneralizedEigen generalized_eigen(const Matrix& A, const Matrix& B, bool want_vectors) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
    throw ArgumentError("generalized_eigen: A and B must be square and of equal size");
  const lapack_int n = static_cast<lapack_int>(A.rows());
  GeneralizedEigen out;
  out.alpha.resize(n);
  out.beta.resize(n);
  if (n == 0) return out;
  Matrix a = A, b = B;
  Matrix vr = want_vectors ? Matrix(n, n) : Matrix(1, 1);
  lapack_int info = LAPACKE_zggev(
      LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n,
      reinterpret_cast<lapack_complex_double*>(a.data()), n,
      reinterpret_cast<lapack_complex_double*>(b.data()), n,
      reinterpret_cast<lapack_complex_double*>(out.alpha.data()),
      reinterpret_cast<lapack_complex_double*>(out.beta.data()), nullptr, 1,
      reinterpret_cast<lapack_complex_double*>(vr.data()), want_vectors ? n : 1);
  if (info != 0)
    throw NepError("zggev failed with info = " + std::to_string(info));
  if (want_vectors) {
    for (Index j = 0; j < n; ++j) {
      double nv = vr.col(j).norm();
      if (nv > 0) vr.col(j) /= nv;
    }
    out.vectors = std::move(vr);
  }
  return out;
}

double min_singular_value(const Matrix& A) {
  Eigen::JacobiSVD<Matrix> svd(A);
  const auto& s = svd.singularValues();
  return s.size() ? s(s.size() - 1) : 0.0;
}

Vector orthogonalize(const Matrix& Q, Index cols, Vector& w, double* norm) {
  const Index len = w.size();
  Vector h = Vector::Zero(cols);
  std::span<Complex> ws(w.data(), static_cast<std::size_t>(len));
  double before = kernels::nrm2(ws);
  for (int pass = 0; pass < 2; ++pass) {
    Vector c(cols);
    for (Index j = 0; j < cols; ++j)
      c(j) = kernels::dotc({Q.col(j).data(), static_cast<std::size_t>(len)}, ws);
    for (Index j = 0; j < cols; ++j)
      kernels::axpy(-c(j), {Q.col(j).data(), static_cast<std::size_t>(len)}, ws);
    h += c;
    double after = kernels::nrm2(ws);
    if (after > before / std::sqrt(2.0)) {
      before = after;
      break;
    }
    before = after;
  }
  if (norm) *norm = before;
  return h;
}

double orthogonality_error(const Matrix& Q, Index cols) {
  Matrix G = Q.leftCols(cols).adjoint() * Q.leftCols(cols);
  G -= Matrix::Identity(cols, cols);
  return G.cwiseAbs().maxCoeff();
}

}  // namespace nep::dense

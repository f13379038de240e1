#include <cmath>

#include "nep/errors.hpp"
#include "nep/problems.hpp"

namespace nep {

namespace {

bool all_finite(const Matrix& M) { return M.allFinite(); }

}  // namespace

Spmf::Spmf(std::vector<Matrix> matrices, std::vector<FunctionPair> functions)
    : n_(0), matrices_(std::move(matrices)), functions_(std::move(functions)) {
  if (matrices_.empty()) throw ArgumentError("Spmf: at least one term is required");
  if (matrices_.size() != functions_.size())
    throw ArgumentError("Spmf: number of matrices and functions differ");
  n_ = matrices_.front().rows();
  if (n_ < 1) throw ArgumentError("Spmf: empty coefficient matrix");
  for (const auto& A : matrices_)
    if (A.rows() != n_ || A.cols() != n_)
      throw ArgumentError("Spmf: matrices must be square and of equal size");
  for (const auto& f : functions_)
    if (!f.scalar || !f.matrix) throw ArgumentError("Spmf: function pair is incomplete");
}

Complex Spmf::scalar_value(Index term, Complex lambda) const {
  Complex v;
  try {
    v = functions_[term].scalar(lambda);
  } catch (const DomainError& e) {
    throw DomainError(std::string(e.what()) + " (term " + std::to_string(term) + ")");
  }
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw MatrixFunctionError("non-finite function value", static_cast<int>(term));
  return v;
}

Matrix Spmf::matrix_value(Index term, const Matrix& S) const {
  Matrix F;
  try {
    F = functions_[term].matrix(S);
  } catch (const DomainError& e) {
    throw DomainError(std::string(e.what()) + " (term " + std::to_string(term) + ")");
  } catch (const MatrixFunctionError&) {
    throw;
  } catch (const std::exception& e) {
    throw MatrixFunctionError(e.what(), static_cast<int>(term));
  }
  if (F.rows() != S.rows() || F.cols() != S.cols() || !all_finite(F))
    throw MatrixFunctionError("matrix function evaluation failed", static_cast<int>(term));
  return F;
}

Vector Spmf::term_derivatives(Index term, Complex lambda, int order) const {
  if (order == 0) {
    Vector d(1);
    d(0) = scalar_value(term, lambda);
    return d;
  }
  return matrix_value(term, derivative_bidiagonal(lambda, order + 1)).col(0);
}

Matrix Spmf::native_mder(Complex lambda, int k) const {
  Matrix out = Matrix::Zero(n_, n_);
  for (Index i = 0; i < terms(); ++i) {
    Complex c = term_derivatives(i, lambda, k)(k);
    if (c != Complex(0.0)) out += c * matrices_[i];
  }
  return out;
}

Vector Spmf::native_mlincomb(Complex lambda, const Matrix& V) const {
  const Index p = V.cols();
  Vector z = Vector::Zero(n_);
  if (p == 1) {
    for (Index i = 0; i < terms(); ++i) z.noalias() += scalar_value(i, lambda) * (matrices_[i] * V.col(0));
    return z;
  }
  const Matrix S = derivative_bidiagonal(lambda, p);
  for (Index i = 0; i < terms(); ++i) {
    Vector w = V * matrix_value(i, S).col(0);
    z.noalias() += matrices_[i] * w;
  }
  return z;
}

Matrix Spmf::native_mm(const Matrix& S, const Matrix& V) const {
  Matrix out = Matrix::Zero(n_, V.cols());
  for (Index i = 0; i < terms(); ++i) out.noalias() += matrices_[i] * (V * matrix_value(i, S));
  return out;
}

std::shared_ptr<Spmf> make_spmf(std::vector<Matrix> matrices, std::vector<FunctionPair> functions) {
  return std::make_shared<Spmf>(std::move(matrices), std::move(functions));
}

}  // namespace nep

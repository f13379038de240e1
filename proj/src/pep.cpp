#include "nep/errors.hpp"
#include "nep/problems.hpp"

namespace nep {

namespace {
// i! / (i-k)!
double falling_factorial(int i, int k) {
  double c = 1.0;
  for (int j = 0; j < k; ++j) c *= static_cast<double>(i - j);
  return c;
}
}  // namespace

Pep::Pep(std::vector<Matrix> coefficients) : n_(0), coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) throw ArgumentError("Pep: at least one coefficient is required");
  n_ = coeffs_.front().rows();
  if (n_ < 1) throw ArgumentError("Pep: empty coefficient matrix");
  for (const auto& A : coeffs_)
    if (A.rows() != n_ || A.cols() != n_)
      throw ArgumentError("Pep: coefficients must be square and of equal size");
}

Matrix Pep::native_mder(Complex lambda, int k) const {
  Matrix out = Matrix::Zero(n_, n_);
  const int m = static_cast<int>(coeffs_.size());
  // Horner in lambda over the differentiated coefficients.
  for (int i = m - 1; i >= k; --i) {
    out *= lambda;
    out += falling_factorial(i, k) * coeffs_[i];
  }
  return out;
}

Vector Pep::native_mlincomb(Complex lambda, const Matrix& V) const {
  const int m = static_cast<int>(coeffs_.size());
  const int p = static_cast<int>(V.cols());
  Vector z = Vector::Zero(n_);
  for (int i = 0; i < m; ++i) {
    // w = sum_{j <= i} i!/(i-j)! lambda^{i-j} v_j
    Vector w = Vector::Zero(n_);
    for (int j = 0; j < std::min(i + 1, p); ++j)
      w += falling_factorial(i, j) * ipow(lambda, i - j) * V.col(j);
    z.noalias() += coeffs_[i] * w;
  }
  return z;
}

Matrix Pep::native_mm(const Matrix& S, const Matrix& V) const {
  Matrix out = Matrix::Zero(n_, V.cols());
  Matrix VS = V;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i > 0) VS = VS * S;
    out.noalias() += coeffs_[i] * VS;
  }
  return out;
}

std::shared_ptr<const Spmf> Pep::as_spmf() const {
  std::vector<FunctionPair> f;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) f.push_back(fn::monomial(static_cast<int>(i)));
  return make_spmf(coeffs_, std::move(f));
}

std::shared_ptr<Pep> make_pep(std::vector<Matrix> coefficients) {
  return std::make_shared<Pep>(std::move(coefficients));
}

}  // namespace nep

#include "nep/errors.hpp"
#include "nep/problems.hpp"

namespace nep {

DerSpmf::DerSpmf(NepPtr parent, Complex sigma, int order)
    : parent_(std::move(parent)), sigma_(sigma), order_(order) {
  if (!parent_) throw ArgumentError("DerSpmf: null parent");
  if (order_ < 1) throw ArgumentError("DerSpmf: derivative order must be at least 1");
  spmf_ = parent_->as_spmf();
  if (!spmf_) throw ArgumentError("DerSpmf: parent has no sum-of-products representation");
  // One matrix-function evaluation per term on the (N+1) x (N+1) bidiagonal matrix.
  table_.resize(spmf_->terms(), order_ + 1);
  for (Index i = 0; i < spmf_->terms(); ++i)
    table_.row(i) = spmf_->term_derivatives(i, sigma_, order_).transpose();
}

Matrix DerSpmf::native_mder(Complex lambda, int k) const {
  if (lambda != sigma_ || k > order_) return parent_->mder(lambda, k);
  const Index n = size();
  Matrix out = Matrix::Zero(n, n);
  const auto& A = spmf_->matrices();
  for (Index i = 0; i < spmf_->terms(); ++i)
    if (table_(i, k) != Complex(0.0)) out += table_(i, k) * A[i];
  return out;
}

Vector DerSpmf::native_mlincomb(Complex lambda, const Matrix& V) const {
  const Index p = V.cols();
  if (lambda != sigma_ || p > order_ + 1) return parent_->mlincomb(lambda, V);
  Vector z = Vector::Zero(size());
  const auto& A = spmf_->matrices();
  for (Index i = 0; i < spmf_->terms(); ++i) {
    Vector w = V * table_.row(i).head(p).transpose();
    z.noalias() += A[i] * w;
  }
  return z;
}

Matrix DerSpmf::native_mm(const Matrix& S, const Matrix& V) const { return parent_->mm(S, V); }

std::shared_ptr<DerSpmf> make_derspmf(NepPtr parent, Complex sigma, int order) {
  return std::make_shared<DerSpmf>(std::move(parent), sigma, order);
}

}  // namespace nep

#include <cmath>

#include "nep/errors.hpp"
#include "nep/transforms.hpp"

namespace nep {

DeflatedNep::DeflatedNep(NepPtr parent, Matrix S0, Matrix V0)
    : parent_(std::move(parent)), S0_(std::move(S0)), V0_(std::move(V0)) {
  if (!parent_) throw ArgumentError("effenberger_deflation: null parent");
  const Index p = S0_.rows();
  if (p < 1 || S0_.cols() != p) throw ArgumentError("effenberger_deflation: S0 must be square");
  if (V0_.rows() != parent_->size() || V0_.cols() != p)
    throw ArgumentError("effenberger_deflation: V0 must be n x p");
}

Matrix DeflatedNep::resolvent(Complex mu) const {
  const Index p = S0_.rows();
  Matrix T = S0_;
  T.diagonal().array() -= mu;
  Eigen::PartialPivLU<Matrix> lu(T);
  const auto& LU = lu.matrixLU();
  double min_pivot = std::abs(LU(0, 0));
  for (Index i = 1; i < p; ++i) min_pivot = std::min(min_pivot, std::abs(LU(i, i)));
  if (min_pivot == 0.0 || !(lu.rcond() > 1e-15))
    throw SingularShift("deflated problem evaluated at an eigenvalue of the deflated pair");
  return lu.solve(Matrix::Identity(p, p));
}

std::vector<Matrix> DeflatedNep::u_derivatives(Complex mu, int k) const {
  const Matrix R = resolvent(mu);
  const Index p = S0_.rows();
  std::vector<Matrix> U;
  U.reserve(static_cast<std::size_t>(k) + 1);
  for (int j = 0; j <= k; ++j) {
    Matrix MV(parent_->size(), p);
    for (Index q = 0; q < p; ++q) MV.col(q) = apply_derivative(*parent_, mu, V0_.col(q), j);
    Matrix T = -MV;
    if (j > 0) T += static_cast<double>(j) * U.back();
    U.push_back(T * R);
  }
  return U;
}

Matrix DeflatedNep::native_mder(Complex lambda, int k) const {
  const Index n = parent_->size();
  const Index p = S0_.rows();
  Matrix out = Matrix::Zero(n + p, n + p);
  out.topLeftCorner(n, n) = parent_->mder(lambda, k);
  out.topRightCorner(n, p) = u_derivatives(lambda, k).back();
  if (k == 0) out.bottomLeftCorner(p, n) = V0_.adjoint();
  return out;
}

Vector DeflatedNep::native_mlincomb(Complex lambda, const Matrix& V) const {
  const Index n = parent_->size();
  const Index p = S0_.rows();
  const Index K = V.cols();
  Vector z(n + p);
  z.head(n) = parent_->mlincomb(lambda, V.topRows(n));
  const Matrix W = V.bottomRows(p);
  int highest = -1;
  for (Index j = 0; j < K; ++j)
    if (!W.col(j).isZero(0.0)) highest = static_cast<int>(j);
  if (highest >= 0) {
    auto U = u_derivatives(lambda, highest);
    for (int j = 0; j <= highest; ++j) z.head(n).noalias() += U[j] * W.col(j);
  }
  z.tail(p) = V0_.adjoint() * V.col(0).head(n);
  return z;
}

std::shared_ptr<DeflatedNep> effenberger_deflation(NepPtr parent, Matrix S0, Matrix V0) {
  return std::make_shared<DeflatedNep>(std::move(parent), std::move(S0), std::move(V0));
}

}  // namespace nep

#include "nep/errors.hpp"
#include "nep/transforms.hpp"

namespace nep {

ProjectedNep::ProjectedNep(NepPtr parent) : parent_(std::move(parent)) {
  if (!parent_) throw ArgumentError("create_proj_nep: null parent");
}

bool ProjectedNep::set_projectmatrices(const Matrix& W, const Matrix& Vb) {
  const Index n = parent_->size();
  if (W.rows() != n || Vb.rows() != n)
    throw ArgumentError("set_projectmatrices: bases must have n rows");
  if (W.cols() != Vb.cols() || W.cols() < 1 || W.cols() > n)
    throw ArgumentError("set_projectmatrices: bases must have equal column count 1 <= q <= n");
  W_ = W;
  Vb_ = Vb;
  auto full_rank = [](const Matrix& B) {
    Eigen::JacobiSVD<Matrix> svd(B);
    const auto& s = svd.singularValues();
    return s(s.size() - 1) > 1e-12 * std::max(1.0, s(0));
  };
  return full_rank(W_) && full_rank(Vb_);
}

void ProjectedNep::require_basis() const {
  if (Vb_.cols() == 0) throw ArgumentError("ProjectedNep: projection bases are not set");
}

Matrix ProjectedNep::native_mder(Complex lambda, int k) const {
  require_basis();
  return W_.adjoint() * (parent_->mder(lambda, k) * Vb_);
}

Vector ProjectedNep::native_mlincomb(Complex lambda, const Matrix& V) const {
  require_basis();
  return W_.adjoint() * parent_->mlincomb(lambda, Vb_ * V);
}

Matrix ProjectedNep::native_mm(const Matrix& S, const Matrix& V) const {
  require_basis();
  return W_.adjoint() * parent_->mm(S, Vb_ * V);
}

std::shared_ptr<ProjectedNep> create_proj_nep(NepPtr parent) {
  return std::make_shared<ProjectedNep>(std::move(parent));
}

}  // namespace nep

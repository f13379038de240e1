#include "nep/errors.hpp"
#include "nep/problems.hpp"

namespace nep {

SumNep::SumNep(NepPtr left, NepPtr right) : left_(std::move(left)), right_(std::move(right)) {
  if (!left_ || !right_) throw ArgumentError("SumNep: null operand");
  if (left_->size() != right_->size()) throw ArgumentError("SumNep: operand sizes differ");
}

Matrix SumNep::native_mder(Complex lambda, int k) const {
  return left_->mder(lambda, k) + right_->mder(lambda, k);
}

Vector SumNep::native_mlincomb(Complex lambda, const Matrix& V) const {
  return left_->mlincomb(lambda, V) + right_->mlincomb(lambda, V);
}

Matrix SumNep::native_mm(const Matrix& S, const Matrix& V) const {
  return left_->mm(S, V) + right_->mm(S, V);
}

std::shared_ptr<const Spmf> SumNep::as_spmf() const {
  auto a = left_->as_spmf();
  auto b = right_->as_spmf();
  if (!a || !b) return nullptr;
  auto A = a->matrices();
  auto f = a->functions();
  A.insert(A.end(), b->matrices().begin(), b->matrices().end());
  f.insert(f.end(), b->functions().begin(), b->functions().end());
  return make_spmf(std::move(A), std::move(f));
}

std::shared_ptr<SumNep> make_sum(NepPtr left, NepPtr right) {
  return std::make_shared<SumNep>(std::move(left), std::move(right));
}

}  // namespace nep

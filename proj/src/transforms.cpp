#include "nep/transforms.hpp"

#include <cmath>

#include "nep/errors.hpp"
#include "nep/problems.hpp"

namespace nep {

ShiftScaledNep::ShiftScaledNep(NepPtr parent, Complex sigma, Complex alpha)
    : parent_(std::move(parent)), sigma_(sigma), alpha_(alpha) {
  if (!parent_) throw ArgumentError("shift_and_scale: null parent");
  if (alpha_ == Complex(0.0)) throw ArgumentError("shift_and_scale: alpha must be nonzero");
}

Matrix ShiftScaledNep::native_mder(Complex lambda, int k) const {
  return ipow(alpha_, k) * parent_->mder(to_parent(lambda), k);
}

Vector ShiftScaledNep::native_mlincomb(Complex lambda, const Matrix& V) const {
  std::vector<Complex> a(static_cast<std::size_t>(V.cols()));
  for (std::size_t j = 0; j < a.size(); ++j) a[j] = ipow(alpha_, static_cast<int>(j));
  return parent_->mlincomb(to_parent(lambda), V, a);
}

Matrix ShiftScaledNep::native_mm(const Matrix& S, const Matrix& V) const {
  Matrix T = alpha_ * S;
  T.diagonal().array() += sigma_;
  return parent_->mm(T, V);
}

std::shared_ptr<const Spmf> ShiftScaledNep::as_spmf() const {
  auto p = parent_->as_spmf();
  if (!p) return nullptr;
  std::vector<FunctionPair> f;
  for (const auto& g : p->functions()) f.push_back(compose_affine(g, sigma_, alpha_));
  return make_spmf(p->matrices(), std::move(f));
}

FunctionPair compose_affine(const FunctionPair& f, Complex sigma, Complex alpha) {
  FunctionPair g;
  g.label = f.label + " o (" + std::to_string(sigma.real()) + " + alpha x)";
  g.scalar = [f, sigma, alpha](Complex x) { return f.scalar(sigma + alpha * x); };
  g.matrix = [f, sigma, alpha](const Matrix& S) {
    Matrix T = alpha * S;
    T.diagonal().array() += sigma;
    return f.matrix(T);
  };
  if (f.derivative)
    g.derivative = [f, sigma, alpha](Complex x, int k) {
      return ipow(alpha, k) * f.derivative(sigma + alpha * x, k);
    };
  if (f.tag && f.tag->kind == FunctionTag::Kind::Exp) {
    // offset + coeff exp(s (sigma + alpha x)) = offset + coeff e^{s sigma} exp(s alpha x)
    FunctionTag t = *f.tag;
    t.coeff *= std::exp(t.scale * sigma);
    t.scale *= alpha;
    g.tag = t;
  }
  return g;
}

// --- Mobius ---------------------------------------------------------------

MobiusNep::MobiusNep(NepPtr parent, Complex a, Complex b, Complex c, Complex d)
    : parent_(std::move(parent)), a_(a), b_(b), c_(c), d_(d) {
  if (!parent_) throw ArgumentError("mobius_transform: null parent");
  if (a_ * d_ - b_ * c_ == Complex(0.0))
    throw ArgumentError("mobius_transform: ad - bc must be nonzero");
}

Complex MobiusNep::map(Complex lambda) const {
  Complex den = c_ * lambda + d_;
  if (den == Complex(0.0)) throw DomainError("Mobius transform evaluated at its pole -d/c");
  return (a_ * lambda + b_) / den;
}

Complex MobiusNep::preimage(Complex mu) const { return (d_ * mu - b_) / (a_ - c_ * mu); }

Matrix MobiusNep::native_mder(Complex lambda, int k) const {
  const Complex mu = map(lambda);
  if (k == 0) return parent_->mder(mu, 0);
  const Complex den = c_ * lambda + d_;
  const Complex det = a_ * d_ - b_ * c_;
  const Complex d1 = det / (den * den);
  if (k == 1) return d1 * parent_->mder(mu, 1);
  if (k == 2) {
    const Complex d2 = -2.0 * c_ * det / (den * den * den);
    return d1 * d1 * parent_->mder(mu, 2) + d2 * parent_->mder(mu, 1);
  }
  return mder_via_mm(*this, lambda, k);
}

Matrix MobiusNep::native_mm(const Matrix& S, const Matrix& V) const {
  const Index p = S.rows();
  Matrix num = a_ * S, den = c_ * S;
  num.diagonal().array() += b_;
  den.diagonal().array() += d_;
  Eigen::PartialPivLU<Matrix> lu(den);
  if (!(lu.rcond() > 1e-14)) throw DomainError("Mobius transform: cS + dI is singular");
  Matrix phi = lu.solve(Matrix::Identity(p, p));
  phi = num * phi;
  return parent_->mm(phi, V);
}

std::shared_ptr<ShiftScaledNep> shift_and_scale(NepPtr parent, Complex sigma, Complex alpha) {
  return std::make_shared<ShiftScaledNep>(std::move(parent), sigma, alpha);
}

std::shared_ptr<MobiusNep> mobius_transform(NepPtr parent, Complex a, Complex b, Complex c,
                                            Complex d) {
  return std::make_shared<MobiusNep>(std::move(parent), a, b, c, d);
}

}  // namespace nep

#pragma once

// Problem transformations. Each wrapper is itself a Nep, so any solver
// applies to the transformed problem.

#include <memory>

#include "nep/matfun.hpp"
#include "nep/nep.hpp"

namespace nep {

/// M~(lambda) = M(alpha lambda + sigma), M~^(k)(lambda) = alpha^k M^(k)(alpha lambda + sigma).
class ShiftScaledNep final : public Nep {
 public:
  ShiftScaledNep(NepPtr parent, Complex sigma, Complex alpha);

  Index size() const override { return parent_->size(); }
  CapabilitySet native_capabilities() const override {
    return {Capability::Mder, Capability::Mlincomb, Capability::MM};
  }
  std::string type_name() const override { return "ShiftScaledNep"; }
  std::shared_ptr<const Spmf> as_spmf() const override;

  Complex sigma() const { return sigma_; }
  Complex alpha() const { return alpha_; }
  /// Eigenvalue of the parent corresponding to an eigenvalue of this problem.
  Complex to_parent(Complex lambda) const { return alpha_ * lambda + sigma_; }
  Complex from_parent(Complex mu) const { return (mu - sigma_) / alpha_; }

 protected:
  Matrix native_mder(Complex lambda, int k) const override;
  Vector native_mlincomb(Complex lambda, const Matrix& V) const override;
  Matrix native_mm(const Matrix& S, const Matrix& V) const override;

 private:
  NepPtr parent_;
  Complex sigma_, alpha_;
};

/// M~(lambda) = M((a lambda + b) / (c lambda + d)).
class MobiusNep final : public Nep {
 public:
  MobiusNep(NepPtr parent, Complex a, Complex b, Complex c, Complex d);

  Index size() const override { return parent_->size(); }
  CapabilitySet native_capabilities() const override {
    return {Capability::Mder, Capability::MM};
  }
  std::string type_name() const override { return "MobiusNep"; }

  Complex map(Complex lambda) const;
  /// Inverse map: the lambda with map(lambda) = mu.
  Complex preimage(Complex mu) const;

 protected:
  Matrix native_mder(Complex lambda, int k) const override;
  Matrix native_mm(const Matrix& S, const Matrix& V) const override;

 private:
  NepPtr parent_;
  Complex a_, b_, c_, d_;
};

/// Deflation of an invariant pair (S0, V0): the (n+p)-dimensional problem
///   [ M(mu)      U(mu) ]
///   [ V0^H       0     ]
/// with U(mu) = -M(mu) V0 (S0 - mu I)^{-1} and
/// U^(k)(mu) = (-M^(k)(mu) V0 + k U^(k-1)(mu)) (S0 - mu I)^{-1}.
/// Eigenvalues of S0 are not eigenvalues of the deflated problem.
class DeflatedNep final : public Nep {
 public:
  DeflatedNep(NepPtr parent, Matrix S0, Matrix V0);

  Index size() const override { return parent_->size() + S0_.rows(); }
  CapabilitySet native_capabilities() const override {
    return {Capability::Mder, Capability::Mlincomb};
  }
  std::string type_name() const override { return "DeflatedNep"; }

  const NepPtr& parent() const { return parent_; }
  const Matrix& S0() const { return S0_; }
  const Matrix& V0() const { return V0_; }
  Index deflated_count() const { return S0_.rows(); }

  /// U^(0..k)(mu), each n x p.
  std::vector<Matrix> u_derivatives(Complex mu, int k) const;

 protected:
  Matrix native_mder(Complex lambda, int k) const override;
  Vector native_mlincomb(Complex lambda, const Matrix& V) const override;

 private:
  Matrix resolvent(Complex mu) const;  // (S0 - mu I)^{-1}

  NepPtr parent_;
  Matrix S0_, V0_;
};

/// Projected problem W^H M(lambda) Vb z = 0 of dimension q. The bases are
/// replaced in place by set_projectmatrices (single writer; readers must not
/// overlap an update).
class ProjectedNep final : public Nep {
 public:
  explicit ProjectedNep(NepPtr parent);

  Index size() const override { return Vb_.cols(); }
  CapabilitySet native_capabilities() const override {
    return {Capability::Mder, Capability::Mlincomb, Capability::MM};
  }
  std::string type_name() const override { return "ProjectedNep"; }

  /// Returns false (and keeps the bases) when a basis is numerically rank
  /// deficient; the bases are still installed.
  bool set_projectmatrices(const Matrix& W, const Matrix& Vb);
  const Matrix& left_basis() const { return W_; }
  const Matrix& right_basis() const { return Vb_; }
  const NepPtr& parent() const { return parent_; }

 protected:
  Matrix native_mder(Complex lambda, int k) const override;
  Vector native_mlincomb(Complex lambda, const Matrix& V) const override;
  Matrix native_mm(const Matrix& S, const Matrix& V) const override;

 private:
  void require_basis() const;
  NepPtr parent_;
  Matrix W_, Vb_;
};

std::shared_ptr<ShiftScaledNep> shift_and_scale(NepPtr parent, Complex sigma, Complex alpha);
std::shared_ptr<MobiusNep> mobius_transform(NepPtr parent, Complex a, Complex b, Complex c,
                                            Complex d);
std::shared_ptr<DeflatedNep> effenberger_deflation(NepPtr parent, Matrix S0, Matrix V0);
std::shared_ptr<ProjectedNep> create_proj_nep(NepPtr parent);

/// f(sigma + alpha lambda) as a function pair.
FunctionPair compose_affine(const FunctionPair& f, Complex sigma, Complex alpha);

}  // namespace nep

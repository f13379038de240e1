#pragma once

// Concrete problem types with closed-form compute functions.

#include <memory>
#include <utility>
#include <vector>

#include "nep/matfun.hpp"
#include "nep/nep.hpp"

namespace nep {

/// Polynomial problem M(lambda) = A_0 + lambda A_1 + ... + lambda^{m-1} A_{m-1}
/// (coefficients in ascending powers).
class Pep final : public Nep {
 public:
  explicit Pep(std::vector<Matrix> coefficients);

  Index size() const override { return n_; }
  CapabilitySet native_capabilities() const override {
    return {Capability::Mder, Capability::Mlincomb, Capability::MM};
  }
  std::string type_name() const override { return "Pep"; }
  std::shared_ptr<const Spmf> as_spmf() const override;

  const std::vector<Matrix>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

 protected:
  Matrix native_mder(Complex lambda, int k) const override;
  Vector native_mlincomb(Complex lambda, const Matrix& V) const override;
  Matrix native_mm(const Matrix& S, const Matrix& V) const override;

 private:
  Index n_;
  std::vector<Matrix> coeffs_;
};

struct DelayTerm {
  double tau;
  Matrix A;
};

/// Delay problem M(lambda) = -lambda I + A_0 + sum_i exp(-tau_i lambda) A_i.
class Dep final : public Nep {
 public:
  Dep(Matrix A0, std::vector<DelayTerm> delays);

  Index size() const override { return A0_.rows(); }
  CapabilitySet native_capabilities() const override {
    return {Capability::Mder, Capability::Mlincomb, Capability::MM};
  }
  std::string type_name() const override { return "Dep"; }
  std::shared_ptr<const Spmf> as_spmf() const override;

  const Matrix& a0() const { return A0_; }
  const std::vector<DelayTerm>& delays() const { return delays_; }

 protected:
  Matrix native_mder(Complex lambda, int k) const override;
  Vector native_mlincomb(Complex lambda, const Matrix& V) const override;
  Matrix native_mm(const Matrix& S, const Matrix& V) const override;

 private:
  Matrix A0_;
  std::vector<DelayTerm> delays_;
};

/// Sum of products of matrices and functions, M(lambda) = sum_i A_i f_i(lambda).
/// Derivatives and linear combinations go through f_i evaluated on the
/// derivative bidiagonal matrix, so only the matrix evaluators are needed.
class Spmf : public Nep, public std::enable_shared_from_this<Spmf> {
 public:
  Spmf(std::vector<Matrix> matrices, std::vector<FunctionPair> functions);

  Index size() const override { return n_; }
  CapabilitySet native_capabilities() const override {
    return {Capability::Mder, Capability::Mlincomb, Capability::MM};
  }
  std::string type_name() const override { return "Spmf"; }
  std::shared_ptr<const Spmf> as_spmf() const override { return weak_from_this().lock(); }

  Index terms() const { return static_cast<Index>(matrices_.size()); }
  const std::vector<Matrix>& matrices() const { return matrices_; }
  const std::vector<FunctionPair>& functions() const { return functions_; }

  /// f_i^(0..order)(lambda) for term i, via the bidiagonal construction.
  Vector term_derivatives(Index term, Complex lambda, int order) const;

 protected:
  Matrix native_mder(Complex lambda, int k) const override;
  Vector native_mlincomb(Complex lambda, const Matrix& V) const override;
  Matrix native_mm(const Matrix& S, const Matrix& V) const override;

 private:
  Complex scalar_value(Index term, Complex lambda) const;
  Matrix matrix_value(Index term, const Matrix& S) const;

  Index n_;
  std::vector<Matrix> matrices_;
  std::vector<FunctionPair> functions_;
};

/// M(lambda) = A(lambda) + B(lambda).
class SumNep final : public Nep {
 public:
  SumNep(NepPtr left, NepPtr right);

  Index size() const override { return left_->size(); }
  CapabilitySet native_capabilities() const override {
    return {Capability::Mder, Capability::Mlincomb, Capability::MM};
  }
  std::string type_name() const override { return "SumNep"; }
  std::shared_ptr<const Spmf> as_spmf() const override;

  const NepPtr& left() const { return left_; }
  const NepPtr& right() const { return right_; }

 protected:
  Matrix native_mder(Complex lambda, int k) const override;
  Vector native_mlincomb(Complex lambda, const Matrix& V) const override;
  Matrix native_mm(const Matrix& S, const Matrix& V) const override;

 private:
  NepPtr left_, right_;
};

/// Wraps a sum-of-products problem and precomputes f_i^(k)(sigma) for
/// k = 0..N. Derivative requests at sigma of order <= N are served from the
/// table; everything else is forwarded to the parent. Wrapping a DerSpmf
/// again at another point is allowed.
class DerSpmf final : public Nep {
 public:
  DerSpmf(NepPtr parent, Complex sigma, int order);

  Index size() const override { return parent_->size(); }
  CapabilitySet native_capabilities() const override {
    return {Capability::Mder, Capability::Mlincomb, Capability::MM};
  }
  std::string type_name() const override { return "DerSpmf"; }
  std::shared_ptr<const Spmf> as_spmf() const override { return spmf_; }

  Complex sigma() const { return sigma_; }
  int order() const { return order_; }
  const NepPtr& parent() const { return parent_; }
  /// Entry (i, k) is f_i^(k)(sigma).
  const Matrix& table() const { return table_; }

 protected:
  Matrix native_mder(Complex lambda, int k) const override;
  Vector native_mlincomb(Complex lambda, const Matrix& V) const override;
  Matrix native_mm(const Matrix& S, const Matrix& V) const override;

 private:
  NepPtr parent_;
  std::shared_ptr<const Spmf> spmf_;
  Complex sigma_;
  int order_;
  Matrix table_;
};

std::shared_ptr<Pep> make_pep(std::vector<Matrix> coefficients);
std::shared_ptr<Dep> make_dep(Matrix A0, std::vector<DelayTerm> delays);
std::shared_ptr<Spmf> make_spmf(std::vector<Matrix> matrices, std::vector<FunctionPair> functions);
std::shared_ptr<SumNep> make_sum(NepPtr left, NepPtr right);
std::shared_ptr<DerSpmf> make_derspmf(NepPtr parent, Complex sigma, int order);

}  // namespace nep

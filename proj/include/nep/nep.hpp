#pragma once

// The problem abstraction: a NEP M(lambda) v = 0 is defined by whichever of
// three compute functions it provides natively,
//
//   mder(lambda, k)      = M^(k)(lambda)
//   mlincomb(lambda, V)  = sum_i M^(i-1)(lambda) v_i
//   mm(S, V)             = (1/2 pi i) \oint M(xi) V (xi I - S)^{-1} dxi
//
// The remaining ones are filled in from the native one(s), so every handle
// answers all three.

#include <cstdint>
#include <memory>
#include <span>
#include <string>

#include "nep/linsolve.hpp"
#include "nep/types.hpp"

namespace nep {

class Spmf;

enum class Capability : std::uint8_t {
  Mder = 1,
  Mlincomb = 2,
  MM = 4,
  LinSolve = 8,
};

class CapabilitySet {
 public:
  constexpr CapabilitySet() = default;
  constexpr CapabilitySet(std::initializer_list<Capability> caps) {
    for (auto c : caps) bits_ |= static_cast<std::uint8_t>(c);
  }
  constexpr bool has(Capability c) const { return bits_ & static_cast<std::uint8_t>(c); }
  constexpr bool any_compute() const {
    return has(Capability::Mder) || has(Capability::Mlincomb) || has(Capability::MM);
  }

 private:
  std::uint8_t bits_ = 0;
};

class Nep {
 public:
  virtual ~Nep() = default;

  virtual Index size() const = 0;
  virtual CapabilitySet native_capabilities() const = 0;
  virtual std::string type_name() const = 0;

  /// M^(k)(lambda).
  Matrix mder(Complex lambda, int k = 0) const;

  /// sum_{i=1}^{p} a_i M^(i-1)(lambda) v_i; empty `a` means all ones.
  Vector mlincomb(Complex lambda, const Matrix& V, std::span<const Complex> a = {}) const;

  /// Block residual M(S, V).
  Matrix mm(const Matrix& S, const Matrix& V) const;

  /// Reusable factorization of M(lambda). Throws SingularSystem.
  virtual LinSolver factorize(Complex lambda) const;

  /// Sum-of-products view of the problem, when one exists.
  virtual std::shared_ptr<const Spmf> as_spmf() const { return nullptr; }

 protected:
  virtual Matrix native_mder(Complex lambda, int k) const;
  virtual Vector native_mlincomb(Complex lambda, const Matrix& V) const;
  virtual Matrix native_mm(const Matrix& S, const Matrix& V) const;

 private:
  Matrix fallback_mm(const Matrix& S, const Matrix& V) const;
};

using NepPtr = std::shared_ptr<const Nep>;

/// M(S, V) e_1 with S the derivative bidiagonal matrix (lambda on the
/// diagonal, S(i+1,i) = i). Equals sum_i M^(i-1)(lambda) v_i.
Vector mlincomb_via_mm(const Nep& nep, Complex lambda, const Matrix& V);

/// M^(k)(lambda) assembled column by column from mlincomb_via_mm on unit vectors.
Matrix mder_via_mm(const Nep& nep, Complex lambda, int k);

struct RayleighOptions {
  double tol = 1e-14;
  int maxit = 50;
};

/// Root of y^H M(lambda) x near lambda0 by damped scalar Newton. Throws
/// NoConvergence (carrying the best iterate) after maxit steps.
Complex compute_rf(const Nep& nep, const Vector& x, const Vector& y, Complex lambda0,
                   const RayleighOptions& opts = {});

/// ||M(lambda) v|| / ||v||; +inf for v = 0.
ErrMeasure default_errmeasure(NepPtr nep);
double relative_residual(const Nep& nep, Complex lambda, const Vector& v);

/// M'(lambda) v via mlincomb.
Vector apply_derivative(const Nep& nep, Complex lambda, const Vector& v, int k = 1);

}  // namespace nep

#pragma once

// Scalar/matrix function pairs used as the f_i of sum-of-products problems,
// plus the bidiagonal and block-triangular constructions that turn matrix
// function evaluations into derivatives and divided differences.

#include <functional>
#include <optional>
#include <string>

#include "nep/types.hpp"

namespace nep {

/// Serializable description of a built-in function
///   f(lambda) = offset + coeff * g(scale * lambda)
/// with g one of lambda^power, exp(lambda) or the principal sqrt(lambda).
struct FunctionTag {
  enum class Kind { Power, Exp, Sqrt };
  Kind kind = Kind::Power;
  int power = 0;
  Complex scale{1.0, 0.0};
  Complex coeff{1.0, 0.0};
  Complex offset{0.0, 0.0};

  friend bool operator==(const FunctionTag&, const FunctionTag&) = default;
};

std::string kind_name(FunctionTag::Kind k);
FunctionTag::Kind parse_kind(const std::string& name);

/// A function given both in scalar sense and in matrix-function sense.
/// `derivative` is optional; when absent derivatives are obtained from the
/// matrix evaluator applied to a bidiagonal matrix.
struct FunctionPair {
  std::function<Complex(Complex)> scalar;
  std::function<Matrix(const Matrix&)> matrix;
  std::function<Complex(Complex, int)> derivative;
  std::optional<FunctionTag> tag;
  std::string label;
};

FunctionPair make_function(const FunctionTag& tag);

namespace fn {
FunctionPair constant(Complex c);
/// coeff * lambda^p
FunctionPair monomial(int p, Complex coeff = 1.0);
/// coeff * exp(scale * lambda)
FunctionPair exp(Complex scale = 1.0, Complex coeff = 1.0);
/// principal sqrt, branch cut on (-inf, 0]
FunctionPair sqrt();
/// 1 + sqrt(lambda)
FunctionPair one_plus_sqrt();
}  // namespace fn

/// k x k matrix with `lambda` on the diagonal and S(i+1,i) = i (1-based).
/// The first column of f(S) is [f(lambda), f'(lambda), ..., f^(k-1)(lambda)].
Matrix derivative_bidiagonal(Complex lambda, Index k);

/// f^(0..order)(lambda) read from the first column of f on the bidiagonal matrix.
Vector derivatives_via_matrix_function(const FunctionPair& f, Complex lambda, int order);

/// f[sigma I + alpha S, sigma I], the upper-right block of
/// f([[sigma I + alpha S, I], [0, sigma I]]).
Matrix divided_difference(const FunctionPair& f, const Matrix& S, Complex sigma,
                          Complex alpha);

/// Spectrum check for the principal square root: throws DomainError if some
/// eigenvalue of S lies on (-inf, 0].
void require_off_negative_axis(const Matrix& S, const char* who);

}  // namespace nep

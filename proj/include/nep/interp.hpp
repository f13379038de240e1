#pragma once

// Newton-form polynomial interpolation of scalar functions, usable as a
// matrix function in sum-of-products problems when no matrix evaluator for
// the original function is at hand.

#include <functional>
#include <vector>

#include "nep/matfun.hpp"

namespace nep {

class NewtonInterpolant {
 public:
  /// Divided-difference table built in quad precision (113-bit significand)
  /// from the double values f(x_j), then rounded to double. Throws
  /// ArgumentError for fewer than two or duplicate nodes and DomainError if f
  /// is not finite at a node or the table overflows.
  NewtonInterpolant(const std::function<Complex(Complex)>& f, std::vector<Complex> nodes);

  const std::vector<Complex>& nodes() const { return nodes_; }
  const std::vector<Complex>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  Complex operator()(Complex x) const;
  /// Nested product c_0 I + (S - x_0 I)(c_1 I + (S - x_1 I)(c_2 I + ...)).
  Matrix operator()(const Matrix& S) const;

  FunctionPair function_pair(std::string label = "interp") const;

 private:
  std::vector<Complex> nodes_;
  std::vector<Complex> coeffs_;
};

NewtonInterpolant newton_interp_matfun(const std::function<Complex(Complex)>& f,
                                       std::vector<Complex> nodes);

/// n Chebyshev points of the first kind mapped to [a, b].
std::vector<Complex> chebyshev_points(int n, double a, double b);

}  // namespace nep

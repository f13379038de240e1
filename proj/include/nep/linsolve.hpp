#pragma once

#include <Eigen/LU>

#include "nep/types.hpp"

namespace nep {

/// LU factorization of M(shift), reused across solves. Immutable after
/// construction, so concurrent solves are safe.
class LinSolver {
 public:
  /// Throws SingularSystem when a pivot vanishes or the reciprocal condition
  /// estimate drops below `singular_tol`.
  LinSolver(Complex shift, const Matrix& M, double singular_tol = kDefaultSingularTol);

  Vector solve(const Vector& b) const;
  Matrix solve(const Matrix& B) const;

  Complex shift() const { return shift_; }
  double rcond() const { return rcond_; }
  Index size() const { return lu_.rows(); }

  static constexpr double kDefaultSingularTol = 1e-16;

 private:
  Complex shift_;
  double rcond_;
  Eigen::PartialPivLU<Matrix> lu_;
};

}  // namespace nep

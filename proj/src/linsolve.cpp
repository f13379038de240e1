#include "nep/linsolve.hpp"

#include <cmath>
#include <sstream>

#include "nep/errors.hpp"

namespace nep {

LinSolver::LinSolver(Complex shift, const Matrix& M, double singular_tol)
    : shift_(shift), rcond_(0.0) {
  if (M.rows() != M.cols()) throw ArgumentError("LinSolver: matrix must be square");
  lu_.compute(M);
  const auto& lu = lu_.matrixLU();
  double min_pivot = lu.rows() ? std::abs(lu(0, 0)) : 1.0;
  for (Index i = 1; i < lu.rows(); ++i) min_pivot = std::min(min_pivot, std::abs(lu(i, i)));
  rcond_ = min_pivot == 0.0 ? 0.0 : lu_.rcond();
  if (!(rcond_ > singular_tol) || !std::isfinite(rcond_)) {
    std::ostringstream os;
    os << "M(lambda) is singular to working precision at lambda = " << shift
       << " (rcond = " << rcond_ << ")";
    throw SingularSystem(os.str(), shift, rcond_);
  }
}

Vector LinSolver::solve(const Vector& b) const {
  if (b.size() != lu_.rows()) throw ArgumentError("LinSolver::solve: dimension mismatch");
  return lu_.solve(b);
}

Matrix LinSolver::solve(const Matrix& B) const {
  if (B.rows() != lu_.rows()) throw ArgumentError("LinSolver::solve: dimension mismatch");
  return lu_.solve(B);
}

}  // namespace nep

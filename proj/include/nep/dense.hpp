#pragma once

// Dense linear-algebra helpers shared by the solvers.

#include <vector>

#include "nep/types.hpp"

namespace nep::dense {

struct GeneralizedEigen {
  std::vector<Complex> alpha;  // eigenvalue = alpha / beta
  std::vector<Complex> beta;
  Matrix vectors;              // right eigenvectors, column j for pair j
  /// alpha/beta, or an infinite value when beta == 0.
  Complex value(Index j) const;
  bool finite(Index j) const;
};

/// Solves A x = theta B x (QZ). Vectors are normalized to unit 2-norm.
GeneralizedEigen generalized_eigen(const Matrix& A, const Matrix& B, bool want_vectors = true);

/// Smallest singular value of A.
double min_singular_value(const Matrix& A);

/// Orthogonalizes w against the first `cols` columns of Q (in place) using
/// classical Gram-Schmidt with one DGKS reorthogonalization pass (threshold
/// 1/sqrt(2)). Returns the projection coefficients; *norm receives ||w|| after
/// orthogonalization. Uses the runtime-selected complex kernels.
Vector orthogonalize(const Matrix& Q, Index cols, Vector& w, double* norm);

/// ||Q^H Q - I||_max over the leading `cols` columns.
double orthogonality_error(const Matrix& Q, Index cols);

}  // namespace nep::dense

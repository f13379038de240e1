#pragma once

// Krylov, projection and contour-integral eigensolvers.

#include <cstdint>
#include <vector>

#include "nep/problems.hpp"
#include "nep/solvers.hpp"

namespace nep {

struct KrylovOptions : SolveOptions {
  KrylovOptions() {
    maxit = 30;
    neigs = 6;
    tol = 1e-10;
  }
  /// Scaling of the Krylov variable: eigenvalues are sigma + gamma / ritz.
  /// Unset means 1 for iar and chebyshev_default_scaling for iar_chebyshev.
  std::optional<Complex> gamma;
  /// Chebyshev variant only: how the constant coefficient y0 is computed.
  ///   Auto             delay formula for Dep, Taylor for Pep and problems
  ///                    without a sum-of-products form, divided differences
  ///                    otherwise
  ///   DividedDifference compute_y0
  ///   Taylor           compute_y0_taylor
  ///   Delay            compute_y0_delay (Dep only)
  enum class Y0Route { Auto, DividedDifference, Taylor, Delay };
  Y0Route y0_route = Y0Route::Auto;
  /// Record orthogonality and Arnoldi-relation diagnostics every iteration.
  bool check_arnoldi = false;
};

struct KrylovResult {
  /// Converged pairs, ordered by distance to the target.
  std::vector<Complex> values;
  Matrix vectors;
  std::vector<double> residuals;
  /// All Ritz pairs of the final iteration with their error estimates.
  std::vector<Complex> ritz_values;
  std::vector<double> ritz_residuals;
  int iterations = 0;
  /// Largest basis (or projected problem) dimension reached.
  Index basis_dim = 0;
  bool converged = false;
  bool breakdown = false;
  /// max ||Q^H Q - I|| and max relative Arnoldi residual seen (check_arnoldi).
  double orthogonality = 0.0;
  double arnoldi_residual = 0.0;
};

/// Infinite Arnoldi in the Taylor basis.
KrylovResult iar(const NepPtr& nep, const KrylovOptions& opts = {});

/// Chebyshev basis on [-1, 1] for the scaled variable.
struct ChebyshevFrame {
  int N = 0;
  /// (N+1) x (N+1); row j holds the Chebyshev coefficients of T_j'.
  RealMatrix D;
  /// T_j(0), j = 0..N.
  RealMatrix theta0;
  Complex sigma{0.0, 0.0};
  Complex alpha{1.0, 0.0};
};

/// Chebyshev integration matrix L_{N+1}: [T_0..T_N]^T = L [T_1'..T_{N+1}']^T.
RealMatrix chebyshev_integration_matrix(int N);
/// D_N = [0; I_{N,N+1} L_{N+1}^{-1}].
RealMatrix build_derivation_matrix(int N);
ChebyshevFrame make_chebyshev_frame(int N, Complex sigma, Complex alpha);

/// sum_i A_i X b_i(D) Theta(0) with b_i(D) = -alpha f_i[sigma I + alpha D, sigma I],
/// D the leading k x k block of frame.D, k = X.cols().
Vector chebyshev_y0_rhs(const Spmf& spmf, const Matrix& X, const ChebyshevFrame& frame);

/// The constant Chebyshev coefficient of the new Krylov vector:
/// M(sigma)^{-1} chebyshev_y0_rhs(...) - Y Theta(0), where Y holds the
/// coefficients 1..k in columns 1..k (column 0 ignored).
Vector compute_y0(const Spmf& spmf, const LinSolver& m0, const Matrix& X, const Matrix& Y,
                  const ChebyshevFrame& frame);

/// Same quantity computed generically through mlincomb on the Taylor
/// coefficients X D^{i-1} Theta(0) / i!.
Vector compute_y0_taylor(const Nep& nep, const LinSolver& m0, const Matrix& X, const Matrix& Y,
                         const ChebyshevFrame& frame);

/// Delay problems: the delayed terms reduce to values of the antiderivative
/// Psi = sum_j y_j T_j at -tau alpha, which stays well conditioned for any
/// basis size as long as |tau alpha| <= 1.
Vector compute_y0_delay(const Dep& dep, const LinSolver& m0, const Matrix& X, const Matrix& Y,
                        const ChebyshevFrame& frame);

/// 1 / max(1, tau_max), where tau_max is the largest |scale| among the
/// exponential terms of the problem's sum-of-products form. Keeps the delayed
/// arguments of the Krylov functions inside [-1, 1].
Complex chebyshev_default_scaling(const Nep& nep);

/// Infinite Arnoldi in the Chebyshev basis.
KrylovResult iar_chebyshev(const NepPtr& nep, const KrylovOptions& opts = {});

struct NlarOptions : SolveOptions {
  NlarOptions() {
    maxit = 60;
    tol = 1e-10;
  }
  /// Initial subspace (orthonormalized); defaults to the start vector.
  std::optional<Matrix> initial_basis;
  NewtonMethod inner = NewtonMethod::Mslp;
};

/// Nonlinear Arnoldi: Galerkin projection onto an expanding subspace.
KrylovResult nlar(const NepPtr& nep, const NlarOptions& opts = {});

struct ContourSpec {
  Complex center{0.0, 0.0};
  double radius = 1.0;
  int nodes = 128;
  /// Number of probe columns; 0 means min(n, 8).
  int probes = 0;
  /// Number of block moments; 0 chooses the smallest count whose Hankel
  /// matrix is rank deficient (at most 8).
  int moments = 0;
  double rank_tol = 1e-10;
  std::uint64_t seed = 0;
};

/// Beyn's contour integral method on the circle of `contour`.
/// Throws RankTestFailed if the probes cannot capture the enclosed spectrum.
KrylovResult beyn_contour(const NepPtr& nep, const ContourSpec& contour,
                          const SolveOptions& opts = {});

}  // namespace nep

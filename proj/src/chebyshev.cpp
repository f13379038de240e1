#include <cmath>
#include <numbers>

#include "nep/errors.hpp"
#include "nep/krylov.hpp"

namespace nep {

RealMatrix chebyshev_integration_matrix(int N) {
  if (N < 0) throw ArgumentError("chebyshev_integration_matrix: N must be nonnegative");
  const Index s = N + 1;
  RealMatrix L = RealMatrix::Zero(s, s);
  L(0, 0) = 1.0;
  for (Index j = 1; j < s; ++j) L(j, j) = 1.0 / (2.0 * static_cast<double>(j + 1));
  for (Index j = 2; j < s; ++j) L(j, j - 2) = -1.0 / (2.0 * static_cast<double>(j - 1));
  return L;
}

RealMatrix build_derivation_matrix(int N) {
  if (N < 1) throw ArgumentError("build_derivation_matrix: N must be at least 1");
  const RealMatrix L = chebyshev_integration_matrix(N);
  const RealMatrix Linv =
      L.triangularView<Eigen::Lower>().solve(RealMatrix::Identity(N + 1, N + 1));
  RealMatrix D = RealMatrix::Zero(N + 1, N + 1);
  D.bottomRows(N) = Linv.topRows(N);
  return D;
}

ChebyshevFrame make_chebyshev_frame(int N, Complex sigma, Complex alpha) {
  ChebyshevFrame f;
  f.N = N;
  f.D = build_derivation_matrix(N);
  f.theta0.resize(N + 1, 1);
  for (int j = 0; j <= N; ++j) {
    // T_j(0) = cos(j pi / 2)
    f.theta0(j, 0) = (j % 2) ? 0.0 : ((j / 2) % 2 ? -1.0 : 1.0);
  }
  f.sigma = sigma;
  f.alpha = alpha;
  return f;
}

namespace {

void check_widths(const Matrix& X, const ChebyshevFrame& frame) {
  if (X.cols() < 1 || X.cols() > frame.N + 1)
    throw ArgumentError("Chebyshev frame of degree " + std::to_string(frame.N) +
                        " cannot hold " + std::to_string(X.cols()) + " coefficients");
}

Vector tail_at_zero(const Matrix& Y, const ChebyshevFrame& frame, Index k) {
  Vector t = Vector::Zero(Y.rows());
  for (Index j = 1; j <= k && j < Y.cols(); ++j)
    if (frame.theta0(j, 0) != 0.0) t += frame.theta0(j, 0) * Y.col(j);
  return t;
}

}  // namespace

Vector chebyshev_y0_rhs(const Spmf& spmf, const Matrix& X, const ChebyshevFrame& frame) {
  check_widths(X, frame);
  const Index k = X.cols();
  const Matrix Dk = frame.D.topLeftCorner(k, k).cast<Complex>();
  const Vector t0 = frame.theta0.topRows(k).col(0).cast<Complex>();
  Vector rhs = Vector::Zero(spmf.size());
  for (Index i = 0; i < spmf.terms(); ++i) {
    Matrix F;
    try {
      F = divided_difference(spmf.functions()[i], Dk, frame.sigma, frame.alpha);
    } catch (const MatrixFunctionError&) {
      throw;
    } catch (const std::exception& e) {
      throw MatrixFunctionError(e.what(), static_cast<int>(i));
    }
    const Vector b = -frame.alpha * (F * t0);
    rhs.noalias() += spmf.matrices()[i] * (X * b);
  }
  return rhs;
}

Vector compute_y0(const Spmf& spmf, const LinSolver& m0, const Matrix& X, const Matrix& Y,
                  const ChebyshevFrame& frame) {
  return m0.solve(chebyshev_y0_rhs(spmf, X, frame)) - tail_at_zero(Y, frame, X.cols());
}

Vector compute_y0_taylor(const Nep& nep, const LinSolver& m0, const Matrix& X, const Matrix& Y,
                         const ChebyshevFrame& frame) {
  check_widths(X, frame);
  const Index k = X.cols();
  const Index n = X.rows();
  const Matrix Dk = frame.D.topLeftCorner(k, k).cast<Complex>();
  Matrix W = Matrix::Zero(n, k + 1);
  std::vector<Complex> a(k + 1);
  a[0] = 0.0;
  Vector d = frame.theta0.topRows(k).col(0).cast<Complex>();  // D^{i-1} Theta(0)
  double factorial = 1.0;
  Complex apow = 1.0;
  for (Index i = 1; i <= k; ++i) {
    factorial *= static_cast<double>(i);
    apow *= frame.alpha;
    W.col(i) = X * d / factorial;
    a[i] = apow;
    d = Dk * d;
  }
  const Vector c = -m0.solve(nep.mlincomb(frame.sigma, W, a));
  return c - tail_at_zero(Y, frame, k);
}

namespace {

// T_0(z), ..., T_{k-1}(z).
Vector chebyshev_values(Complex z, Index k) {
  Vector t(k);
  if (k > 0) t(0) = 1.0;
  if (k > 1) t(1) = z;
  for (Index j = 2; j < k; ++j) t(j) = 2.0 * z * t(j - 1) - t(j - 2);
  return t;
}

}  // namespace

Vector compute_y0_delay(const Dep& dep, const LinSolver& m0, const Matrix& X, const Matrix& Y,
                        const ChebyshevFrame& frame) {
  check_widths(X, frame);
  const Index k = X.cols();
  if (Y.cols() < k + 1) throw ArgumentError("compute_y0_delay: Y needs k+1 columns");
  const Vector t0 = frame.theta0.topRows(k + 1).col(0).cast<Complex>();
  // -lambda I contributes -alpha phi(0); each delay contributes
  // exp(-tau sigma) A (Psi(-tau alpha) - Psi(0)).
  Vector s = -frame.alpha * (X * t0.head(k));
  const Matrix Yt = Y.rightCols(k);
  for (const DelayTerm& d : dep.delays()) {
    const Vector te = chebyshev_values(-d.tau * frame.alpha, k + 1);
    const Vector psi = Yt * (te.tail(k) - t0.tail(k));
    s.noalias() += std::exp(-d.tau * frame.sigma) * (d.A * psi);
  }
  return -m0.solve(s) - tail_at_zero(Y, frame, k);
}

}  // namespace nep

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "nep/errors.hpp"
#include "nep/krylov.hpp"
#include "nep/random.hpp"

namespace nep {

namespace {

struct Moments {
  std::vector<Matrix> A;  // A_p, p = 0..2K-1, in the scaled variable
  double scale = 0.0;     // largest integrand norm seen
};

Moments quadrature(const Nep& nep, const ContourSpec& c, const Matrix& R, int count,
                   const SolveOptions& opts) {
  const Index n = nep.size();
  Moments m;
  m.A.assign(count, Matrix::Zero(n, R.cols()));
  const int N = c.nodes;
  for (int j = 0; j < N; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / N;
    const Complex zeta = std::polar(1.0, theta);
    const Complex xi = c.center + c.radius * zeta;
    Eigen::PartialPivLU<Matrix> lu(nep.mder(xi, 0));
    const Matrix X = lu.solve(R);
    if (!X.allFinite()) {
      opts.emit(0, "beyn_contour: warning: M(xi) singular on the contour, node skipped");
      continue;
    }
    m.scale = std::max(m.scale, X.norm());
    // (1/2 pi i) dxi = (r zeta / N) in the scaled variable mu = (xi - c) / r.
    Complex w = zeta / static_cast<double>(N);
    for (int p = 0; p < count; ++p) {
      m.A[p] += w * X;
      w *= zeta;
    }
  }
  return m;
}

Matrix hankel(const std::vector<Matrix>& A, int K, int shift) {
  const Index n = A[0].rows(), l = A[0].cols();
  Matrix B(n * K, l * K);
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) B.block(i * n, j * l, n, l) = A[i + j + shift];
  return B;
}

}  // namespace

KrylovResult beyn_contour(const NepPtr& nep, const ContourSpec& contour,
                          const SolveOptions& opts) {
  const Index n = nep->size();
  if (!(contour.radius > 0.0)) throw ArgumentError("beyn_contour: radius must be positive");
  if (contour.nodes < 8) throw ArgumentError("beyn_contour: at least 8 quadrature nodes required");
  if (contour.probes < 0 || contour.probes > n)
    throw ArgumentError("beyn_contour: probe count must satisfy 0 < l <= n");
  if (contour.moments < 0 || contour.moments > 8)
    throw ArgumentError("beyn_contour: moments must be in 0..8");
  const ErrMeasure E = opts.measure(nep);
  const Index l = contour.probes ? contour.probes : std::min<Index>(n, 8);
  SplitMix64 rng(contour.seed);
  const Matrix R = random_complex_matrix(n, l, rng);

  const int kmax = contour.moments ? contour.moments : 8;
  const Moments mom = quadrature(*nep, contour, R, 2 * kmax + 2, opts);

  struct RankedSvd {
    Eigen::JacobiSVD<Matrix> svd;
    Index rank = 0;
  };
  auto ranked = [&](int K) {
    RankedSvd r{Eigen::JacobiSVD<Matrix>(hankel(mom.A, K, 0),
                                         Eigen::ComputeThinU | Eigen::ComputeThinV)};
    const auto& s = r.svd.singularValues();
    const double smax = s.size() ? s(0) : 0.0;
    if (smax > contour.rank_tol * mom.scale)
      while (r.rank < s.size() && s(r.rank) > contour.rank_tol * smax) ++r.rank;
    return r;
  };

  KrylovResult res;
  res.iterations = 1;
  int K = contour.moments ? contour.moments : 1;
  RankedSvd cur = ranked(K);
  if (!contour.moments) {
    // Smallest K whose rank is below l K and unchanged by one more moment.
    for (;;) {
      if (K == kmax) break;
      RankedSvd next = ranked(K + 1);
      if (cur.rank < l * K && next.rank == cur.rank) break;
      ++K;
      cur = std::move(next);
    }
  }
  res.basis_dim = l * K;
  const Index rank = cur.rank;
  if (rank == 0) return res;
  if (rank >= l * K)
    throw RankTestFailed("beyn_contour: full numerical rank with " + std::to_string(l) +
                         " probes and " + std::to_string(K) +
                         " moments; increase the probe count");
  const auto& svd = cur.svd;
  const auto& s = svd.singularValues();
  const Matrix B1 = hankel(mom.A, K, 1);
  const Matrix V0 = svd.matrixU().leftCols(rank);
  const Matrix W0 = svd.matrixV().leftCols(rank);
  const Vector sinv = s.head(rank).cwiseInverse().cast<Complex>();
  const Matrix B = V0.adjoint() * B1 * W0 * sinv.asDiagonal();
  Eigen::ComplexEigenSolver<Matrix> es(B);
  const Matrix vecs = V0.topRows(n) * es.eigenvectors();
  std::vector<std::pair<Complex, Index>> inside;
  for (Index i = 0; i < rank; ++i) {
    const Complex mu = es.eigenvalues()(i);
    if (std::abs(mu) < 1.0) inside.push_back({contour.center + contour.radius * mu, i});
  }
  res.vectors.resize(n, static_cast<Index>(inside.size()));
  bool all = true;
  for (std::size_t j = 0; j < inside.size(); ++j) {
    Vector v = vecs.col(inside[j].second);
    if (v.norm() > 0.0) v.normalize();
    const double err = E(inside[j].first, v);
    res.values.push_back(inside[j].first);
    res.residuals.push_back(err);
    res.vectors.col(static_cast<Index>(j)) = v;
    all = all && err < opts.tol;
  }
  res.ritz_values = res.values;
  res.ritz_residuals = res.residuals;
  res.converged = all;
  return res;
}

}  // namespace nep

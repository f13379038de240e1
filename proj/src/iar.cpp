#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "nep/dense.hpp"
#include "nep/errors.hpp"
#include "nep/krylov.hpp"

namespace nep {

namespace {

constexpr double kBreakdownTol = 1e-14;

// Maps the first k*n entries of a basis column to the next Krylov vector of
// length (k+1)*n.
using Extend = std::function<Vector(const Vector& x, Index k)>;

struct Ritz {
  Complex lambda;
  Vector v;
  double err;
};

std::vector<Ritz> extract(const Matrix& V, const Matrix& H, Index k, Index n, Complex sigma,
                          Complex gamma, const ErrMeasure& E) {
  Eigen::ComplexEigenSolver<Matrix> es(H.topLeftCorner(k, k));
  const Matrix Z = V.topLeftCorner(n, k) * es.eigenvectors();
  std::vector<Ritz> out;
  out.reserve(k);
  for (Index i = 0; i < k; ++i) {
    const Complex theta = es.eigenvalues()(i);
    if (theta == Complex(0.0)) continue;
    const Complex lambda = sigma + gamma / theta;
    const Vector v = Z.col(i);
    double err = E(lambda, v);
    if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();
    out.push_back({lambda, v, err});
  }
  std::stable_sort(out.begin(), out.end(), [&](const Ritz& a, const Ritz& b) {
    return std::abs(a.lambda - sigma) < std::abs(b.lambda - sigma);
  });
  return out;
}

void fill_result(KrylovResult& res, const std::vector<Ritz>& ritz, double tol, int neigs,
                 Index n) {
  res.ritz_values.clear();
  res.ritz_residuals.clear();
  std::vector<const Ritz*> conv;
  for (const Ritz& r : ritz) {
    res.ritz_values.push_back(r.lambda);
    res.ritz_residuals.push_back(r.err);
    if (r.err < tol && static_cast<int>(conv.size()) < neigs) conv.push_back(&r);
  }
  res.values.clear();
  res.residuals.clear();
  res.vectors.resize(n, static_cast<Index>(conv.size()));
  for (std::size_t i = 0; i < conv.size(); ++i) {
    res.values.push_back(conv[i]->lambda);
    res.residuals.push_back(conv[i]->err);
    res.vectors.col(static_cast<Index>(i)) = conv[i]->v.normalized();
  }
}

KrylovResult arnoldi(const NepPtr& nep, const KrylovOptions& opts, Complex gamma,
                     const Extend& extend, const char* who) {
  const Index n = nep->size();
  opts.validate(n);
  if (gamma == Complex(0.0) || !std::isfinite(std::abs(gamma)))
    throw ArgumentError("gamma must be finite and nonzero");
  const ErrMeasure E = opts.measure(nep);
  const Index m = opts.maxit;

  Matrix V = Matrix::Zero(n * (m + 1), m + 1);
  Matrix H = Matrix::Zero(m + 1, m);
  V.col(0).head(n) = opts.start_vector(n).normalized();

  KrylovResult res;
  std::vector<Ritz> ritz;
  for (Index k = 1; k <= m; ++k) {
    Vector w = extend(V.col(k - 1).head(k * n), k);
    const Vector w0 = opts.check_arnoldi ? w : Vector();
    double beta = 0.0;
    const Vector h = dense::orthogonalize(V, k, w, &beta);
    H.col(k - 1).head(k) = h;
    H(k, k - 1) = beta;
    res.iterations = static_cast<int>(k);
    res.basis_dim = k + 1;

    const bool broke = beta < kBreakdownTol;
    if (!broke) V.col(k).head((k + 1) * n) = w / beta;

    if (opts.check_arnoldi) {
      const Index rows = (k + 1) * n;
      Vector rel = w0 - V.topLeftCorner(rows, k) * h;
      if (!broke) rel -= beta * V.col(k).head(rows);
      const double hn = H.topLeftCorner(k + 1, k).norm();
      res.arnoldi_residual = std::max(res.arnoldi_residual, rel.norm() / std::max(hn, 1e-300));
      res.orthogonality =
          std::max(res.orthogonality, dense::orthogonality_error(V.topRows(rows), broke ? k : k + 1));
    }

    ritz = extract(V, H, k, n, opts.target, gamma, E);
    const int nconv = static_cast<int>(
        std::count_if(ritz.begin(), ritz.end(), [&](const Ritz& r) { return r.err < opts.tol; }));
    if (opts.log && opts.log_level >= 1) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%s iteration %ld: converged %d", who, static_cast<long>(k),
                    nconv);
      opts.log(buf);
    }
    if (nconv >= opts.neigs) {
      res.converged = true;
      break;
    }
    if (broke) {
      res.breakdown = true;
      break;
    }
  }
  fill_result(res, ritz, opts.tol, opts.neigs, n);
  if (res.breakdown && !res.values.empty()) res.converged = true;
  return res;
}

LinSolver factor_at_shift(const Nep& nep, Complex sigma, const char* who) {
  try {
    return nep.factorize(sigma);
  } catch (const SingularSystem& e) {
    throw SingularShift(std::string(who) + ": shift is an eigenvalue: " + e.what());
  }
}

}  // namespace

Complex chebyshev_default_scaling(const Nep& nep) {
  double tau = 0.0;
  if (auto spmf = nep.as_spmf())
    for (const FunctionPair& f : spmf->functions())
      if (f.tag && f.tag->kind == FunctionTag::Kind::Exp) tau = std::max(tau, std::abs(f.tag->scale));
  return 1.0 / std::max(1.0, tau);
}

KrylovResult iar(const NepPtr& nep, const KrylovOptions& opts) {
  const Index n = nep->size();
  const Complex gamma = opts.gamma.value_or(1.0);
  const LinSolver m0 = factor_at_shift(*nep, opts.target, "iar");
  std::vector<Complex> a(opts.maxit + 2);
  a[0] = 0.0;
  a[1] = gamma;
  for (std::size_t j = 2; j < a.size(); ++j) a[j] = a[j - 1] * gamma;
  Extend extend = [&](const Vector& x, Index k) {
    Matrix Y(n, k + 1);
    for (Index j = 0; j < k; ++j) Y.col(j + 1) = x.segment(j * n, n) / static_cast<double>(j + 1);
    Y.col(0).setZero();
    Y.col(0) = -m0.solve(
        nep->mlincomb(opts.target, Y, std::span<const Complex>(a.data(), static_cast<std::size_t>(k + 1))));
    return Eigen::Map<const Vector>(Y.data(), (k + 1) * n).eval();
  };
  return arnoldi(nep, opts, gamma, extend, "iar");
}

KrylovResult iar_chebyshev(const NepPtr& nep, const KrylovOptions& opts) {
  const Index n = nep->size();
  const Complex gamma = opts.gamma.value_or(chebyshev_default_scaling(*nep));
  const LinSolver m0 = factor_at_shift(*nep, opts.target, "iar_chebyshev");
  const ChebyshevFrame frame = make_chebyshev_frame(std::max(opts.maxit, 1), opts.target, gamma);
  const RealMatrix L = chebyshev_integration_matrix(std::max(opts.maxit, 1));
  using Route = KrylovOptions::Y0Route;
  const auto* dep = dynamic_cast<const Dep*>(nep.get());
  std::shared_ptr<const Spmf> spmf = nep->as_spmf();
  Route route = opts.y0_route;
  if (route == Route::Auto) {
    if (dep)
      route = Route::Delay;
    else if (!spmf || dynamic_cast<const Pep*>(nep.get()))
      route = Route::Taylor;
    else
      route = Route::DividedDifference;
  }
  if (route == Route::Delay && !dep)
    throw ArgumentError("iar_chebyshev: the delay y0 formula needs a Dep");
  if (route == Route::DividedDifference && !spmf)
    throw ArgumentError("iar_chebyshev: divided differences need a sum-of-products form");
  Extend extend = [&](const Vector& x, Index k) {
    const Eigen::Map<const Matrix> X(x.data(), n, k);
    Matrix Y(n, k + 1);
    Y.rightCols(k) = X * L.topLeftCorner(k, k).cast<Complex>();
    Y.col(0).setZero();
    switch (route) {
      case Route::Delay: Y.col(0) = compute_y0_delay(*dep, m0, X, Y, frame); break;
      case Route::DividedDifference: Y.col(0) = compute_y0(*spmf, m0, X, Y, frame); break;
      default: Y.col(0) = compute_y0_taylor(*nep, m0, X, Y, frame); break;
    }
    return Eigen::Map<const Vector>(Y.data(), (k + 1) * n).eval();
  };
  return arnoldi(nep, opts, gamma, extend, "iar_chebyshev");
}

}  // namespace nep

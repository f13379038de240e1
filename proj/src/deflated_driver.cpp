#include <algorithm>
#include <cmath>

#include "nep/errors.hpp"
#include "nep/solvers.hpp"
#include "nep/transforms.hpp"

namespace nep {

DeflationOutcome solve_k_eigenpairs(const NepPtr& nep, int k, const SolveOptions& opts,
                                    NewtonMethod method) {
  if (k < 1) throw ArgumentError("k must be at least 1");
  const Index n = nep->size();
  opts.validate(n);
  DeflationOutcome out;
  out.S.resize(0, 0);
  out.V.resize(n, 0);

  for (int i = 0; i < k; ++i) {
    const Index p = out.S.rows();
    NepPtr problem = nep;
    SolveOptions inner = opts;
    if (p > 0) {
      problem = effenberger_deflation(nep, out.S, out.V);
      // The caller's measure and start vector refer to the parent dimension.
      inner.errmeasure = {};
      Vector v0 = Vector::Zero(n + p);
      v0.head(n) = opts.start_vector(n);
      v0.tail(p).setOnes();
      inner.v0 = v0;
    }
    NewtonResult res;
    try {
      res = run_newton(method, problem, inner);
    } catch (const NepError& e) {
      out.failed_index = i;
      out.failure = e.what();
      return out;
    }

    Vector v = res.v.head(n);
    Vector w = res.v.tail(p);
    const double scale = v.norm();
    if (scale == 0.0) {
      out.failed_index = i;
      out.failure = "deflated solve returned a vanishing eigenvector block";
      return out;
    }
    v /= scale;
    w /= scale;

    // Eigenvector of the parent: (S - lambda I) y = -w, x = V y + v.
    Vector x = v;
    if (p > 0) {
      Matrix T = out.S - res.lambda * Matrix::Identity(p, p);
      Vector y = T.triangularView<Eigen::Upper>().solve(-w);
      x += out.V * y;
    }
    x.normalize();

    // A root of the deflated problem that is not an eigenvalue of the parent
    // (for example one drifting to infinity) stops the loop.
    const double residual = relative_residual(*nep, res.lambda, x);
    const double scale_m = std::max(1.0, nep->mder(res.lambda).norm());
    if (!std::isfinite(residual) || residual > std::sqrt(opts.tol) * scale_m) {
      out.failed_index = i;
      out.failure = "deflated solve converged to a point that is not an eigenvalue";
      return out;
    }

    Matrix S(p + 1, p + 1);
    S.setZero();
    S.topLeftCorner(p, p) = out.S;
    S.col(p).head(p) = w;
    S(p, p) = res.lambda;
    Matrix V(n, p + 1);
    V.leftCols(p) = out.V;
    V.col(p) = v;
    out.S = std::move(S);
    out.V = std::move(V);
    out.pairs.push_back({res.lambda, x, residual});
  }
  return out;
}

}  // namespace nep

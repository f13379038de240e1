#include <cmath>
#include <cstdio>

#include <Eigen/QR>

#include "nep/dense.hpp"
#include "nep/errors.hpp"
#include "nep/krylov.hpp"
#include "nep/transforms.hpp"

namespace nep {

namespace {

bool is_new(Complex lambda, const std::vector<Complex>& found) {
  for (Complex f : found)
    if (std::abs(lambda - f) <= 1e-6 * std::max(1.0, std::abs(f))) return false;
  return true;
}

struct Candidate {
  Complex lambda;
  Vector z;
};

// Eigenpair of the projected problem nearest the target that is not already converged.
std::optional<Candidate> inner_solve(const NepPtr& proj, const NlarOptions& opts,
                                     const std::vector<Complex>& found) {
  SolveOptions inner;
  inner.tol = std::max(opts.tol * 1e-2, 1e-14);
  inner.maxit = 50;
  inner.target = opts.target;
  if (found.empty()) {
    try {
      NewtonResult r = run_newton(opts.inner, proj, inner);
      return Candidate{r.lambda, r.v};
    } catch (const NoConvergence& e) {
      if (e.vector().size() == proj->size() && e.vector().norm() > 0.0)
        return Candidate{e.lambda(), e.vector()};
      return std::nullopt;
    } catch (const SingularSystem&) {
      return std::nullopt;
    }
  }
  const int want = static_cast<int>(std::min<Index>(found.size() + 1, proj->size()));
  DeflationOutcome d = solve_k_eigenpairs(proj, want, inner, opts.inner);
  std::optional<Candidate> best;
  for (const Eigenpair& p : d.pairs) {
    if (!is_new(p.lambda, found)) continue;
    if (!best || std::abs(p.lambda - opts.target) < std::abs(best->lambda - opts.target))
      best = Candidate{p.lambda, p.v};
  }
  return best;
}

}  // namespace

KrylovResult nlar(const NepPtr& nep, const NlarOptions& opts) {
  const Index n = nep->size();
  opts.validate(n);
  const ErrMeasure E = opts.measure(nep);

  Matrix Vb;
  if (opts.initial_basis) {
    if (opts.initial_basis->rows() != n || opts.initial_basis->cols() < 1)
      throw ArgumentError("nlar: initial basis must have n rows and at least one column");
    Eigen::HouseholderQR<Matrix> qr(*opts.initial_basis);
    Vb = qr.householderQ() * Matrix::Identity(n, opts.initial_basis->cols());
  } else {
    Vb = opts.start_vector(n).normalized();
  }

  std::optional<LinSolver> precond;
  try {
    precond.emplace(nep->factorize(opts.target));
  } catch (const SingularSystem&) {
  }

  auto proj = create_proj_nep(nep);
  KrylovResult res;
  std::vector<Complex> found;
  std::vector<Vector> found_vectors;
  auto record = [&](Complex lambda, const Vector& u, double err) {
    found.push_back(lambda);
    found_vectors.push_back(u);
    res.residuals.push_back(err);
  };

  Complex lambda = opts.target;
  Vector u = Vb.col(0);
  double err = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= opts.maxit; ++it) {
    res.iterations = it;
    proj->set_projectmatrices(Vb, Vb);
    res.basis_dim = std::max(res.basis_dim, Vb.cols());

    std::optional<Candidate> c = inner_solve(proj, opts, found);
    bool fallback = !c;
    if (c) {
      lambda = c->lambda;
      u = (Vb * c->z).normalized();
      err = E(lambda, u);
      if (opts.log && opts.log_level >= 1) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "nlar iteration %d: dim %ld Error: %e", it,
                      static_cast<long>(Vb.cols()), err);
        opts.log(buf);
      }
      if (err < opts.tol) {
        record(lambda, u, err);
        if (static_cast<int>(found.size()) >= opts.neigs) {
          res.converged = true;
          break;
        }
        continue;
      }
      if (Vb.cols() < n) {
        Vector t = nep->mlincomb(lambda, u);
        if (precond) t = precond->solve(t);
        const double before = t.norm();
        double after = 0.0;
        dense::orthogonalize(Vb, Vb.cols(), t, &after);
        if (after > 1e-12 * before && std::isfinite(after)) {
          Vb.conservativeResize(Eigen::NoChange, Vb.cols() + 1);
          Vb.col(Vb.cols() - 1) = t / after;
          continue;
        }
      }
      fallback = true;
    }
    if (fallback) {
      // Saturated subspace: solve the full problem directly from the current iterate.
      SolveOptions dense_opts;
      dense_opts.tol = opts.tol;
      dense_opts.maxit = opts.maxit;
      dense_opts.target = lambda;
      dense_opts.v0 = u;
      dense_opts.errmeasure = opts.errmeasure;
      NewtonResult r = run_newton(opts.inner, nep, dense_opts);
      if (!is_new(r.lambda, found)) break;
      record(r.lambda, r.v.normalized(), E(r.lambda, r.v));
      res.converged = static_cast<int>(found.size()) >= opts.neigs;
      break;
    }
  }

  if (found.empty())
    throw NoConvergence("nlar: no eigenpair converged within maxit", lambda, u, {}, res.iterations);
  res.values = found;
  res.vectors.resize(n, static_cast<Index>(found.size()));
  for (std::size_t i = 0; i < found.size(); ++i) res.vectors.col(static_cast<Index>(i)) = found_vectors[i];
  res.ritz_values = res.values;
  res.ritz_residuals = res.residuals;
  return res;
}

}  // namespace nep

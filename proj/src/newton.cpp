#include <cmath>
#include <cstdio>
#include <limits>

#include "nep/dense.hpp"
#include "nep/errors.hpp"
#include "nep/solvers.hpp"

namespace nep {

void SolveOptions::validate(Index n) const {
  if (!(tol > 0.0)) throw ArgumentError("tol must be positive");
  if (maxit < 1) throw ArgumentError("maxit must be at least 1");
  if (neigs < 1) throw ArgumentError("neigs must be at least 1");
  if (v0 && v0->size() != n)
    throw ArgumentError("v0 has length " + std::to_string(v0->size()) + ", expected " +
                        std::to_string(n));
  if (v0 && v0->norm() == 0.0) throw ArgumentError("v0 must be nonzero");
}

Vector SolveOptions::start_vector(Index n) const {
  if (v0 && v0->size() == n) return *v0;
  return Vector::Ones(n);
}

ErrMeasure SolveOptions::measure(const NepPtr& nep) const {
  return errmeasure ? errmeasure : default_errmeasure(nep);
}

void SolveOptions::emit(int level, const std::string& line) const {
  if (log && log_level >= level) log(line);
}

namespace {

std::string iteration_line(int it, double err) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "Iteration %d: Error: %e", it, err);
  return buf;
}

double perturbation(Complex lambda) {
  return std::sqrt(std::numeric_limits<double>::epsilon()) * (1.0 + std::abs(lambda));
}

// Error at a trial point, +inf where M has a declared singularity.
double guarded(const ErrMeasure& err, Complex lambda, const Vector& v) {
  try {
    return err(lambda, v);
  } catch (const DomainError&) {
    return std::numeric_limits<double>::infinity();
  } catch (const MatrixFunctionError&) {
    return std::numeric_limits<double>::infinity();
  }
}

// Largest t in {1, 1/2, ..., 2^-10} keeping lambda + t dlambda off the
// singularities of M; 0 if there is none.
double admissible_step(const Nep& nep, Complex lambda, Complex dlambda) {
  double t = 1.0;
  for (int j = 0; j <= 10; ++j, t *= 0.5) {
    try {
      nep.mder(lambda + t * dlambda, 0);
      return t;
    } catch (const DomainError&) {
    } catch (const MatrixFunctionError&) {
    }
  }
  return 0.0;
}

}  // namespace

ArmijoStep armijo_damp(Complex lambda, const Vector& v, Complex dlambda, const Vector& dv,
                       double err0, const ErrMeasure& err) {
  constexpr double c = 1e-4;
  double t = 1.0;
  double e = 0.0;
  for (int j = 0; j <= 10; ++j) {
    e = guarded(err, lambda + t * dlambda, v + t * dv);
    if (e <= (1.0 - c * t) * err0) return {t, e, false};
    if (j < 10) t *= 0.5;
  }
  return {t, e, true};
}

NewtonResult augnewton(const NepPtr& nep, const SolveOptions& opts) {
  const Index n = nep->size();
  opts.validate(n);
  const ErrMeasure E = opts.measure(nep);
  NewtonResult res;
  const Vector c = opts.start_vector(n);
  Complex lambda = opts.target;
  Vector v = c / c.dot(c);  // c^H v = 1
  double err = E(lambda, v);
  bool retried = false;

  for (int it = 1; it <= opts.maxit; ++it) {
    res.history.push_back(err);
    opts.emit(1, iteration_line(it, err));
    if (err < opts.tol) {
      res.lambda = lambda;
      res.v = v;
      res.iterations = it;
      return res;
    }
    std::optional<LinSolver> solver;
    try {
      solver.emplace(nep->factorize(lambda));
      ++res.factorizations;
    } catch (const SingularSystem&) {
      if (retried) throw;
      retried = true;
      lambda += perturbation(lambda);
      err = E(lambda, v);
      continue;
    }
    const Vector z = apply_derivative(*nep, lambda, v);
    const Vector t = solver->solve(z);
    const Complex denom = c.dot(t);
    if (denom == Complex(0.0))
      throw NoConvergence("augnewton: breakdown (c^H M^{-1} M' v = 0)", lambda, v, res.history,
                          it);
    const Complex alpha = 1.0 / denom;
    const Complex dlambda = -alpha;
    const Vector dv = alpha * t - v;
    if (opts.armijo) {
      ArmijoStep step = armijo_damp(lambda, v, dlambda, dv, err, E);
      if (step.stagnated) {
        // No sufficient decrease along the Newton direction: take the full
        // step unless it is not admissible.
        const double full = guarded(E, lambda + dlambda, v + dv);
        if (std::isfinite(full)) step = {1.0, full, true};
      }
      if (!std::isfinite(step.error))
        throw NoConvergence("augnewton: every damped step lands on a singularity of M", lambda,
                            v, res.history, it);
      lambda += step.step * dlambda;
      v += step.step * dv;
      err = step.error;
    } else {
      lambda += dlambda;
      v += dv;
      err = E(lambda, v);
    }
  }
  throw NoConvergence("augnewton: no convergence within maxit", lambda, v, res.history,
                      opts.maxit);
}

NewtonResult resinv(const NepPtr& nep, const SolveOptions& opts) {
  const Index n = nep->size();
  opts.validate(n);
  const ErrMeasure E = opts.measure(nep);
  NewtonResult res;
  std::optional<LinSolver> solver;
  try {
    solver.emplace(nep->factorize(opts.target));
  } catch (const SingularSystem& e) {
    throw SingularShift(std::string("resinv: shift is an eigenvalue: ") + e.what());
  }
  res.factorizations = 1;
  Vector v = opts.start_vector(n);
  v.normalize();
  Complex lambda = opts.target;
  for (int it = 1; it <= opts.maxit; ++it) {
    try {
      lambda = compute_rf(*nep, v, v, lambda);
    } catch (const NoConvergence& e) {
      lambda = e.lambda();
    }
    const double err = E(lambda, v);
    res.history.push_back(err);
    opts.emit(1, iteration_line(it, err));
    if (err < opts.tol) {
      res.lambda = lambda;
      res.v = v;
      res.iterations = it;
      return res;
    }
    v -= solver->solve(nep->mlincomb(lambda, v));
    v.normalize();
  }
  throw NoConvergence("resinv: no convergence within maxit", lambda, v, res.history,
                      opts.maxit);
}

NewtonResult quasinewton(const NepPtr& nep, const SolveOptions& opts) {
  const Index n = nep->size();
  opts.validate(n);
  const ErrMeasure E = opts.measure(nep);
  NewtonResult res;
  std::optional<LinSolver> solver;
  try {
    solver.emplace(nep->factorize(opts.target));
  } catch (const SingularSystem& e) {
    throw SingularShift(std::string("quasinewton: shift is an eigenvalue: ") + e.what());
  }
  res.factorizations = 1;
  const Vector c = opts.start_vector(n);
  Vector v = c / c.dot(c);
  Complex lambda = opts.target;
  for (int it = 1; it <= opts.maxit; ++it) {
    const double err = E(lambda, v);
    res.history.push_back(err);
    opts.emit(1, iteration_line(it, err));
    if (err < opts.tol) {
      res.lambda = lambda;
      res.v = v;
      res.iterations = it;
      return res;
    }
    // Newton step on [M(l)v; c^H v - 1] with the Jacobian block frozen at the shift.
    const Vector r = nep->mlincomb(lambda, v);
    const Vector z = apply_derivative(*nep, lambda, v);
    const Vector Jr = solver->solve(r);
    const Vector Jz = solver->solve(z);
    const Complex denom = c.dot(Jz);
    if (denom == Complex(0.0))
      throw NoConvergence("quasinewton: breakdown", lambda, v, res.history, it);
    const Complex dlambda = -c.dot(Jr) / denom;
    const double t = admissible_step(*nep, lambda, dlambda);
    if (t == 0.0)
      throw NoConvergence("quasinewton: step lands on a singularity of M", lambda, v,
                          res.history, it);
    v -= t * (Jr + dlambda * Jz);
    lambda += t * dlambda;
  }
  throw NoConvergence("quasinewton: no convergence within maxit", lambda, v, res.history,
                      opts.maxit);
}

NewtonResult mslp(const NepPtr& nep, const SolveOptions& opts) {
  const Index n = nep->size();
  opts.validate(n);
  const ErrMeasure E = opts.measure(nep);
  NewtonResult res;
  Complex lambda = opts.target;
  Vector v = opts.start_vector(n);
  v.normalize();
  bool retried = false;
  for (int it = 1; it <= opts.maxit; ++it) {
    const Matrix A = nep->mder(lambda, 0);
    const Matrix B = nep->mder(lambda, 1);
    const auto ge = dense::generalized_eigen(A, B);
    Index best = -1;
    double best_abs = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < n; ++j) {
      if (!ge.finite(j)) continue;
      const double a = std::abs(ge.value(j));
      if (std::isfinite(a) && a < best_abs) {
        best_abs = a;
        best = j;
      }
    }
    if (best < 0) {
      if (retried)
        throw NoConvergence("mslp: pencil (M, M') has no finite eigenvalue", lambda, v,
                            res.history, it);
      retried = true;
      lambda += perturbation(lambda);
      continue;
    }
    const double t = admissible_step(*nep, lambda, -ge.value(best));
    if (t == 0.0)
      throw NoConvergence("mslp: step lands on a singularity of M", lambda, v, res.history, it);
    lambda -= t * ge.value(best);
    v = ge.vectors.col(best);
    const double err = E(lambda, v);
    res.history.push_back(err);
    opts.emit(1, iteration_line(it, err));
    if (err < opts.tol) {
      res.lambda = lambda;
      res.v = v;
      res.iterations = it;
      return res;
    }
  }
  throw NoConvergence("mslp: no convergence within maxit", lambda, v, res.history, opts.maxit);
}

NewtonResult newtonqr(const NepPtr& nep, const SolveOptions& opts) {
  const Index n = nep->size();
  opts.validate(n);
  const ErrMeasure E = opts.measure(nep);
  NewtonResult res;
  Complex lambda = opts.target;
  Vector v = opts.start_vector(n).normalized();
  for (int it = 1; it <= opts.maxit; ++it) {
    const Matrix A = nep->mder(lambda, 0);
    Eigen::ColPivHouseholderQR<Matrix> qr(A);
    const Matrix R = qr.matrixR().template triangularView<Eigen::Upper>();
    const Complex rnn = R(n - 1, n - 1);
    Vector y(n);
    y(n - 1) = 1.0;
    if (n > 1)
      y.head(n - 1) = -R.topLeftCorner(n - 1, n - 1)
                           .template triangularView<Eigen::Upper>()
                           .solve(R.col(n - 1).head(n - 1));
    const Vector p = qr.colsPermutation() * y;
    v = p.normalized();
    const double err = E(lambda, v);
    res.history.push_back(err);
    opts.emit(1, iteration_line(it, err));
    if (err < opts.tol) {
      res.lambda = lambda;
      res.v = v;
      res.iterations = it;
      return res;
    }
    const Matrix Q = qr.householderQ();
    const Complex drnn = Q.col(n - 1).dot(apply_derivative(*nep, lambda, p));
    if (drnn == Complex(0.0))
      throw NoConvergence("newtonqr: vanishing derivative of the last pivot", lambda, v,
                          res.history, it);
    const double t = admissible_step(*nep, lambda, -rnn / drnn);
    if (t == 0.0)
      throw NoConvergence("newtonqr: step lands on a singularity of M", lambda, v, res.history,
                          it);
    lambda -= t * rnn / drnn;
  }
  throw NoConvergence("newtonqr: no convergence within maxit", lambda, v, res.history,
                      opts.maxit);
}

NewtonResult run_newton(NewtonMethod method, const NepPtr& nep, const SolveOptions& opts) {
  switch (method) {
    case NewtonMethod::AugNewton: return augnewton(nep, opts);
    case NewtonMethod::ResInv: return resinv(nep, opts);
    case NewtonMethod::QuasiNewton: return quasinewton(nep, opts);
    case NewtonMethod::Mslp: return mslp(nep, opts);
    case NewtonMethod::NewtonQr: return newtonqr(nep, opts);
  }
  throw ArgumentError("unknown Newton method");
}

NewtonMethod parse_newton_method(const std::string& name) {
  if (name == "augnewton") return NewtonMethod::AugNewton;
  if (name == "resinv") return NewtonMethod::ResInv;
  if (name == "quasinewton") return NewtonMethod::QuasiNewton;
  if (name == "mslp") return NewtonMethod::Mslp;
  if (name == "newtonqr") return NewtonMethod::NewtonQr;
  throw UnknownName(name, {"augnewton", "resinv", "quasinewton", "mslp", "newtonqr"});
}

std::string method_name(NewtonMethod m) {
  switch (m) {
    case NewtonMethod::AugNewton: return "augnewton";
    case NewtonMethod::ResInv: return "resinv";
    case NewtonMethod::QuasiNewton: return "quasinewton";
    case NewtonMethod::Mslp: return "mslp";
    case NewtonMethod::NewtonQr: return "newtonqr";
  }
  return "?";
}

}  // namespace nep

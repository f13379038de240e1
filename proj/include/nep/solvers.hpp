#pragma once

// Newton-type eigensolvers. All of them access the problem only through the
// compute functions (mlincomb for M(lambda)u1 + M'(lambda)u2, mder where a
// dense matrix is needed) and factorize().

#include <optional>
#include <string>
#include <vector>

#include "nep/nep.hpp"

namespace nep {

struct SolveOptions {
  double tol = 1e-12;
  int maxit = 100;
  /// Target / starting point (sigma).
  Complex target{0.0, 0.0};
  /// Starting vector; all ones when absent.
  std::optional<Vector> v0;
  /// Empty means default_errmeasure.
  ErrMeasure errmeasure;
  int log_level = 0;
  LogSink log;
  /// Number of eigenpairs wanted (Krylov/projection/deflation drivers).
  int neigs = 1;
  /// Armijo step-length control in augnewton / newtonqr.
  bool armijo = true;

  void validate(Index n) const;
  Vector start_vector(Index n) const;
  ErrMeasure measure(const NepPtr& nep) const;
  void emit(int level, const std::string& line) const;
};

struct NewtonResult {
  Complex lambda;
  Vector v;
  int iterations = 0;
  std::vector<double> history;
  /// Number of factorizations performed (quasinewton reports exactly one).
  int factorizations = 0;
};

NewtonResult augnewton(const NepPtr& nep, const SolveOptions& opts = {});
NewtonResult resinv(const NepPtr& nep, const SolveOptions& opts = {});
NewtonResult quasinewton(const NepPtr& nep, const SolveOptions& opts = {});
NewtonResult mslp(const NepPtr& nep, const SolveOptions& opts = {});
NewtonResult newtonqr(const NepPtr& nep, const SolveOptions& opts = {});

enum class NewtonMethod { AugNewton, ResInv, QuasiNewton, Mslp, NewtonQr };
NewtonResult run_newton(NewtonMethod method, const NepPtr& nep, const SolveOptions& opts);
NewtonMethod parse_newton_method(const std::string& name);
std::string method_name(NewtonMethod m);

struct ArmijoStep {
  double step = 1.0;
  double error = 0.0;
  bool stagnated = false;
};

/// Largest t in {1, 1/2, ..., 2^-10} with err(lambda + t dlambda, v + t dv)
/// <= (1 - c t) err0, c = 1e-4. If none qualifies returns t = 2^-10 with the
/// stagnation flag set.
ArmijoStep armijo_damp(Complex lambda, const Vector& v, Complex dlambda, const Vector& dv,
                       double err0, const ErrMeasure& err);

struct Eigenpair {
  Complex lambda;
  Vector v;
  double residual = 0.0;
};

struct DeflationOutcome {
  std::vector<Eigenpair> pairs;
  /// Invariant pair accumulated by the driver (S upper triangular, V orthonormal).
  Matrix S, V;
  /// Index of the solve that failed to converge, or -1.
  int failed_index = -1;
  std::string failure;
  bool complete() const { return failed_index < 0; }
};

/// Computes k eigenpairs one at a time, deflating each converged pair
/// (Effenberger) before the next solve. A failing inner solve stops the loop
/// and is reported through failed_index; the pairs found so far are kept.
DeflationOutcome solve_k_eigenpairs(const NepPtr& nep, int k, const SolveOptions& opts,
                                    NewtonMethod method = NewtonMethod::AugNewton);

}  // namespace nep

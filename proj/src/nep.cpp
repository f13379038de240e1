#include <optional>
#include "nep/nep.hpp"

#include <cmath>
#include <limits>

#include "nep/errors.hpp"
#include "nep/matfun.hpp"

namespace nep {

namespace {

void check_lambda(Complex lambda) {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
    throw DomainError("evaluation point is not finite");
}

}  // namespace

Matrix Nep::mder(Complex lambda, int k) const {
  if (k < 0) throw ArgumentError("mder: derivative order must be nonnegative");
  check_lambda(lambda);
  const auto caps = native_capabilities();
  if (caps.has(Capability::Mder)) return native_mder(lambda, k);
  const Index n = size();
  if (caps.has(Capability::Mlincomb)) {
    Matrix out(n, n);
    Matrix V = Matrix::Zero(n, k + 1);
    for (Index j = 0; j < n; ++j) {
      V(j, k) = 1.0;
      out.col(j) = native_mlincomb(lambda, V);
      V(j, k) = 0.0;
    }
    return out;
  }
  if (caps.has(Capability::MM)) return mder_via_mm(*this, lambda, k);
  throw CapabilityError(type_name() + ": no route to compute M^(k)(lambda)");
}

Vector Nep::mlincomb(Complex lambda, const Matrix& V, std::span<const Complex> a) const {
  check_lambda(lambda);
  const Index n = size();
  if (V.rows() != n)
    throw ArgumentError("mlincomb: V has " + std::to_string(V.rows()) + " rows, expected " +
                        std::to_string(n));
  if (V.cols() < 1) throw ArgumentError("mlincomb: V must have at least one column");
  if (!a.empty() && static_cast<Index>(a.size()) != V.cols())
    throw ArgumentError("mlincomb: coefficient vector length must match the column count");
  Matrix W = V;
  for (std::size_t i = 0; i < a.size(); ++i) W.col(static_cast<Index>(i)) *= a[i];

  const auto caps = native_capabilities();
  if (caps.has(Capability::Mlincomb)) return native_mlincomb(lambda, W);
  if (caps.has(Capability::Mder)) {
    Vector z = Vector::Zero(n);
    for (Index i = 0; i < W.cols(); ++i) {
      if (W.col(i).isZero(0.0)) continue;
      z.noalias() += native_mder(lambda, static_cast<int>(i)) * W.col(i);
    }
    return z;
  }
  if (caps.has(Capability::MM)) return mlincomb_via_mm(*this, lambda, W);
  throw CapabilityError(type_name() + ": no route to compute linear combinations");
}

Matrix Nep::mm(const Matrix& S, const Matrix& V) const {
  if (S.rows() != S.cols()) throw ArgumentError("mm: S must be square");
  if (V.rows() != size() || V.cols() != S.rows())
    throw ArgumentError("mm: V must be n x p with p = size(S)");
  if (native_capabilities().has(Capability::MM)) return native_mm(S, V);
  return fallback_mm(S, V);
}

LinSolver Nep::factorize(Complex lambda) const { return LinSolver(lambda, mder(lambda, 0)); }

Matrix Nep::native_mder(Complex, int) const {
  throw CapabilityError(type_name() + ": mder is not natively provided");
}
Vector Nep::native_mlincomb(Complex, const Matrix&) const {
  throw CapabilityError(type_name() + ": mlincomb is not natively provided");
}
Matrix Nep::native_mm(const Matrix&, const Matrix&) const {
  throw CapabilityError(type_name() + ": mm is not natively provided");
}

// M(S, V) from point evaluations. If S - cI is nilpotent (c the mean
// eigenvalue) the Taylor expansion around c terminates and is exact. Otherwise
// a well-conditioned eigendecomposition S = X D X^{-1} gives
// M(S, V) = [M(d_j) (VX)_j] X^{-1}; as a last resort the Taylor series is
// summed until its terms fall below working precision.
Matrix Nep::fallback_mm(const Matrix& S, const Matrix& V) const {
  const auto caps = native_capabilities();
  if (!caps.has(Capability::Mder) && !caps.has(Capability::Mlincomb))
    throw CapabilityError(type_name() + ": no route to compute the block residual");
  const Index p = S.rows();
  const Index n = size();
  const Complex c = S.trace() / static_cast<double>(p);
  Matrix N = S;
  N.diagonal().array() -= c;

  auto taylor = [&](Index terms) {
    // W_j = V N^j / j!
    std::vector<Matrix> W;
    W.reserve(terms);
    W.push_back(V);
    for (Index j = 1; j < terms; ++j) W.push_back(W.back() * N / static_cast<double>(j));
    Matrix out(n, p);
    Matrix cols(n, terms);
    for (Index q = 0; q < p; ++q) {
      for (Index j = 0; j < terms; ++j) cols.col(j) = W[j].col(q);
      out.col(q) = mlincomb(c, cols);
    }
    return out;
  };

  const double nscale = std::max(1.0, N.norm());
  Matrix Np = Matrix::Identity(p, p);
  for (Index j = 0; j < p; ++j) Np = Np * N;
  if (Np.norm() <= 1e-13 * std::pow(nscale, static_cast<double>(p))) return taylor(p);

  Eigen::ComplexEigenSolver<Matrix> es(S);
  const Matrix& X = es.eigenvectors();
  Eigen::JacobiSVD<Matrix> svd(X);
  const auto& sv = svd.singularValues();
  if (sv(p - 1) > 1e-8 * sv(0)) {
    Matrix VX = V * X;
    Matrix Y(n, p);
    for (Index j = 0; j < p; ++j) Y.col(j) = mlincomb(es.eigenvalues()(j), VX.col(j));
    return X.transpose().partialPivLu().solve(Y.transpose()).transpose();
  }

  Matrix term = V;
  for (Index j = 1; j < 80; ++j) {
    term = term * N / static_cast<double>(j);
    if (term.norm() <= 1e-17 * V.norm()) return taylor(j + 1);
  }
  throw CapabilityError(type_name() +
                        ": block residual fallback failed (defective S with wide spectrum)");
}

Vector mlincomb_via_mm(const Nep& nep, Complex lambda, const Matrix& V) {
  if (V.cols() < 1) throw ArgumentError("mlincomb_via_mm: V must have at least one column");
  Matrix S = derivative_bidiagonal(lambda, V.cols());
  return nep.mm(S, V).col(0);
}

Matrix mder_via_mm(const Nep& nep, Complex lambda, int k) {
  const Index n = nep.size();
  Matrix out(n, n);
  Matrix V = Matrix::Zero(n, k + 1);
  for (Index j = 0; j < n; ++j) {
    V(j, k) = 1.0;
    out.col(j) = mlincomb_via_mm(nep, lambda, V);
    V(j, k) = 0.0;
  }
  return out;
}

Vector apply_derivative(const Nep& nep, Complex lambda, const Vector& v, int k) {
  Matrix V = Matrix::Zero(v.size(), k + 1);
  V.col(k) = v;
  return nep.mlincomb(lambda, V);
}

Complex compute_rf(const Nep& nep, const Vector& x, const Vector& y, Complex lambda0,
                   const RayleighOptions& opts) {
  const double xn = x.norm(), yn = y.norm();
  if (xn == 0.0 || yn == 0.0) throw ArgumentError("compute_rf: x and y must be nonzero");
  auto g = [&](Complex lam) { return y.dot(nep.mlincomb(lam, x)); };
  // Trial points on a singularity of M count as rejected steps.
  auto g_checked = [&](Complex lam) -> std::optional<Complex> {
    try {
      return g(lam);
    } catch (const DomainError&) {
      return std::nullopt;
    } catch (const MatrixFunctionError&) {
      return std::nullopt;
    }
  };
  constexpr double eps = std::numeric_limits<double>::epsilon();

  Complex lambda = lambda0;
  Complex gval = g(lambda);
  for (int it = 0; it < opts.maxit; ++it) {
    if (std::abs(gval) <= opts.tol * xn * yn) return lambda;
    Complex gp;
    try {
      gp = y.dot(apply_derivative(nep, lambda, x));
    } catch (const DomainError&) {
      throw NoConvergence("compute_rf: derivative undefined at the iterate", lambda, x,
                          {std::abs(gval)}, it);
    }
    if (gp == Complex(0.0))
      throw NoConvergence("compute_rf: vanishing derivative of the scalar equation", lambda,
                          x, {std::abs(gval)}, it);
    Complex step = gval / gp;
    Complex trial = lambda - step;
    std::optional<Complex> gtrial = g_checked(trial);
    for (int h = 0; h < 10 && (!gtrial || std::abs(*gtrial) > std::abs(gval)); ++h) {
      step *= 0.5;
      trial = lambda - step;
      gtrial = g_checked(trial);
    }
    if (!gtrial)
      throw NoConvergence("compute_rf: iterate stuck at a singularity of M", lambda, x,
                          {std::abs(gval)}, it);
    lambda = trial;
    gval = *gtrial;
    if (std::abs(step) <= 8.0 * eps * (1.0 + std::abs(lambda))) return lambda;
  }
  if (std::abs(gval) <= opts.tol * xn * yn) return lambda;
  throw NoConvergence("compute_rf: scalar Newton did not converge", lambda, x,
                      {std::abs(gval)}, opts.maxit);
}

double relative_residual(const Nep& nep, Complex lambda, const Vector& v) {
  const double vn = v.norm();
  if (vn == 0.0) return std::numeric_limits<double>::infinity();
  return nep.mlincomb(lambda, v).norm() / vn;
}

ErrMeasure default_errmeasure(NepPtr nep) {
  return [nep = std::move(nep)](Complex lambda, const Vector& v) {
    return relative_residual(*nep, lambda, v);
  };
}

}  // namespace nep

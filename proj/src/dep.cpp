#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

#include "nep/errors.hpp"
#include "nep/problems.hpp"

namespace nep {

Dep::Dep(Matrix A0, std::vector<DelayTerm> delays)
    : A0_(std::move(A0)), delays_(std::move(delays)) {
  const Index n = A0_.rows();
  if (n < 1 || A0_.cols() != n) throw ArgumentError("Dep: A0 must be square and nonempty");
  for (const auto& d : delays_) {
    if (d.A.rows() != n || d.A.cols() != n)
      throw ArgumentError("Dep: delay matrices must match A0");
    if (!(d.tau >= 0.0)) throw ArgumentError("Dep: delays must be nonnegative");
  }
}

Matrix Dep::native_mder(Complex lambda, int k) const {
  const Index n = size();
  Matrix out = Matrix::Zero(n, n);
  if (k == 0) {
    out = A0_;
    out.diagonal().array() -= lambda;
  } else if (k == 1) {
    out.diagonal().setConstant(-1.0);
  }
  for (const auto& d : delays_) {
    Complex c = std::pow(-d.tau, k) * std::exp(-d.tau * lambda);
    out += c * d.A;
  }
  return out;
}

Vector Dep::native_mlincomb(Complex lambda, const Matrix& V) const {
  const Index p = V.cols();
  Vector z = A0_ * V.col(0) - lambda * V.col(0);
  if (p > 1) z -= V.col(1);
  for (const auto& d : delays_) {
    Complex e = std::exp(-d.tau * lambda);
    Vector w = V.col(0);
    double t = 1.0;
    for (Index j = 1; j < p; ++j) {
      t *= -d.tau;
      if (t == 0.0) break;
      w += t * V.col(j);
    }
    z.noalias() += e * (d.A * w);
  }
  return z;
}

Matrix Dep::native_mm(const Matrix& S, const Matrix& V) const {
  Matrix out = A0_ * V - V * S;
  for (const auto& d : delays_) {
    Matrix E = (Complex(-d.tau) * S).exp();
    out.noalias() += d.A * (V * E);
  }
  return out;
}

std::shared_ptr<const Spmf> Dep::as_spmf() const {
  const Index n = size();
  std::vector<Matrix> A{Matrix::Identity(n, n), A0_};
  std::vector<FunctionPair> f{fn::monomial(1, -1.0), fn::constant(1.0)};
  for (const auto& d : delays_) {
    A.push_back(d.A);
    f.push_back(fn::exp(-d.tau));
  }
  return make_spmf(std::move(A), std::move(f));
}

std::shared_ptr<Dep> make_dep(Matrix A0, std::vector<DelayTerm> delays) {
  return std::make_shared<Dep>(std::move(A0), std::move(delays));
}

}  // namespace nep

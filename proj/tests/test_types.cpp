#include <doctest.h>

#include "nep/errors.hpp"
#include "nep/matfun.hpp"
#include "nep/problems.hpp"
#include "support.hpp"

using namespace nep;
using namespace nep::testing;

TEST_CASE("Pep derivatives") {
  SplitMix64 rng(1);
  const Matrix A1 = randn(3, 3, rng), A2 = randn(3, 3, rng), A3 = randn(3, 3, rng);
  auto pep = make_pep({A1, A2, A3});
  CHECK((pep->mder(2.0, 1) - (A2 + 4.0 * A3)).norm() < 1e-13);
  CHECK(pep->mder(2.0, 3).norm() == 0.0);

  auto cubic = random_pep(4, 2, 3);
  const Complex lambda(1.0, 1.0);
  CHECK((cubic->mder(lambda, 2) - fd_second(*cubic, lambda)).norm() <
        1e-6 * cubic->mder(lambda, 2).norm());
}

TEST_CASE("Dep evaluation and derivatives") {
  SplitMix64 rng(3);
  const Matrix A0 = randn(3, 3, rng), A1 = randn(3, 3, rng), A2 = randn(3, 3, rng);
  auto flat = make_dep(A0, {{0.0, A1}, {0.0, A2}});
  CHECK((flat->mder(0.0) - (A0 + A1 + A2)).norm() < 1e-14);

  auto dep = random_dep(4, 5, 2);
  const Complex lambda(-0.3, 0.8);
  CHECK((dep->mder(lambda, 1) - fd_derivative(*dep, lambda, 0)).norm() <
        1e-6 * dep->mder(lambda, 1).norm());
  CHECK((dep->mder(lambda, 3) - fd_derivative(*dep, lambda, 2)).norm() <
        1e-6 * dep->mder(lambda, 3).norm());
}

TEST_CASE("Dep block residual") {
  auto dep = random_dep(3, 7, 2);
  SplitMix64 rng(8);
  const Matrix v = randn(3, 1, rng);
  Matrix sum = dep->a0();
  for (const auto& d : dep->delays()) sum += d.A;
  CHECK((dep->mm(Matrix::Zero(1, 1), v) - sum * v).norm() < 1e-13);

  auto zero = make_dep(Matrix::Zero(3, 3), {{1.0, Matrix::Zero(3, 3)}});
  const Matrix V = randn(3, 2, rng), S = randn(2, 2, rng);
  CHECK((zero->mm(S, V) + V * S).norm() == 0.0);
}

TEST_CASE("Spmf with the identity function") {
  SplitMix64 rng(4);
  const Matrix A = randn(3, 3, rng), B = randn(3, 3, rng);
  auto spmf = make_spmf({A, B}, {fn::monomial(1), fn::constant(1.0)});
  CHECK((spmf->mder(0.7, 1) - A).norm() < 1e-13);
  CHECK(spmf->mder(0.7, 2).norm() < 1e-13);
}

TEST_CASE("Spmf derivatives match finite differences") {
  auto spmf = random_spmf(4, 9);
  const Complex lambda(0.4, -0.2);
  CHECK((spmf->mder(lambda, 1) - fd_derivative(*spmf, lambda, 0)).norm() <
        1e-6 * spmf->mder(lambda, 1).norm());
}

TEST_CASE("Spmf block residual of a converged eigenpair") {
  auto pep = random_pep(3, 17);
  auto spmf = pep->as_spmf();
  REQUIRE(spmf);
  const Complex lambda = companion_eigenvalues(pep->coefficients()).front();
  Eigen::JacobiSVD<Matrix> svd(pep->mder(lambda), Eigen::ComputeFullV);
  const Matrix v = svd.matrixV().col(2);
  CHECK(spmf->mm(Matrix::Constant(1, 1, lambda), v).norm() < 1e-10);
}

TEST_CASE("sqrt term off its domain") {
  auto spmf = make_spmf({Matrix::Identity(2, 2)}, {fn::sqrt()});
  CHECK_THROWS_AS(spmf->mder(-1.0), DomainError);
}

TEST_CASE("DerSpmf") {
  auto spmf = random_spmf(4, 10);
  const Complex sigma(0.2, 0.1);
  auto der = make_derspmf(spmf, sigma, 8);
  for (Index i = 0; i < spmf->terms(); ++i)
    CHECK(std::abs(der->table()(i, 0) - spmf->functions()[i].scalar(sigma)) < 1e-14);
  SplitMix64 rng(2);
  for (int k = 1; k <= 8; ++k) {
    const Matrix V = randn(4, k, rng);
    const Vector a = spmf->mlincomb(sigma, V);
    CHECK((der->mlincomb(sigma, V) - a).norm() <= 1e-12 * a.norm());
  }
  // Away from sigma everything is forwarded.
  CHECK((der->mder(0.9, 2) - spmf->mder(0.9, 2)).norm() < 1e-14);
}

TEST_CASE("SumNep adds its parts") {
  auto a = random_dep(3, 1);
  auto b = random_pep(3, 2);
  auto sum = make_sum(a, b);
  const Complex lambda(0.1, 0.5);
  for (int k = 0; k < 3; ++k)
    CHECK((sum->mder(lambda, k) - a->mder(lambda, k) - b->mder(lambda, k)).norm() < 1e-12);
}

TEST_CASE("derivative bidiagonal") {
  const Vector d = derivatives_via_matrix_function(fn::exp(2.0), 0.5, 4);
  for (int k = 0; k <= 4; ++k) CHECK(std::abs(d(k) - std::pow(2.0, k) * std::exp(1.0)) < 1e-12);
}

TEST_CASE("divided difference of the identity is I") {
  SplitMix64 rng(6);
  const Matrix S = randn(3, 3, rng);
  CHECK((divided_difference(fn::monomial(1), S, 0.0, 1.0) - Matrix::Identity(3, 3)).norm() <
        1e-14);
}

TEST_CASE("divided difference of exp against the series") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix S = 0.5 * randn(3, 3, rng);
    const Complex sigma = rng.complex_normal(), alpha = rng.complex_normal();
    const Matrix got = divided_difference(fn::exp(), S, sigma, alpha);
    const Matrix want = series_divided_difference([&](int) { return std::exp(sigma); }, S, alpha);
    CHECK((got - want).norm() <= 1e-10 * want.norm());
  }
}

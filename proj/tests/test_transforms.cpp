#include <doctest.h>

#include "nep/dense.hpp"
#include "nep/errors.hpp"
#include "nep/solvers.hpp"
#include "nep/transforms.hpp"
#include "support.hpp"

using namespace nep;
using namespace nep::testing;

TEST_CASE("shift and scale") {
  auto dep = random_dep(4, 1);
  auto ss = shift_and_scale(dep, -1.0, 2.0);
  CHECK((ss->mder(0.5, 1) - 2.0 * dep->mder(0.0, 1)).norm() < 1e-12);
  CHECK((ss->mder(0.5) - dep->mder(0.0)).norm() < 1e-13);
  CHECK(std::abs(ss->to_parent(ss->from_parent(Complex(0.3, 0.2))) - Complex(0.3, 0.2)) < 1e-15);
  SplitMix64 rng(2);
  const Matrix V = randn(4, 3, rng);
  const Vector a = ss->mlincomb(0.25, V);
  CHECK((a - mlincomb_via_mm(*ss, 0.25, V)).norm() <= 1e-10 * a.norm());
}

TEST_CASE("Mobius transform") {
  auto pep = random_pep(3, 3);
  SUBCASE("affine case") {
    auto mob = mobius_transform(pep, 2.0, -1.0, 0.0, 1.0);
    auto ss = shift_and_scale(pep, -1.0, 2.0);
    for (int k = 0; k < 3; ++k) CHECK((mob->mder(0.3, k) - ss->mder(0.3, k)).norm() < 1e-11);
  }
  SUBCASE("identity") {
    auto mob = mobius_transform(pep, 1.0, 0.0, 0.0, 1.0);
    CHECK((mob->mder(Complex(0.2, 0.4), 1) - pep->mder(Complex(0.2, 0.4), 1)).norm() < 1e-12);
  }
  SUBCASE("eigenvalues map back") {
    const Complex a(1.0, 0.5), b(0.2, 0.0), c(0.3, 0.0), d(1.0, 0.0);
    auto mob = mobius_transform(pep, a, b, c, d);
    for (Complex mu : companion_eigenvalues(pep->coefficients())) {
      const Complex lambda = (b - d * mu) / (c * mu - a);
      CHECK(std::abs(mob->map(lambda) - mu) < 1e-10 * std::max(1.0, std::abs(mu)));
      CHECK(std::abs(mob->preimage(mu) - lambda) < 1e-10 * std::max(1.0, std::abs(lambda)));
      CHECK(dense::min_singular_value(mob->mder(lambda)) < 1e-10 * mob->mder(lambda).norm());
    }
  }
}

TEST_CASE("deflated problem") {
  auto dep = random_dep(5, 0);
  SolveOptions o;
  o.target = 0.0;
  const auto first = augnewton(dep, o);
  const Vector v = first.v / first.v.norm();
  auto dnep = effenberger_deflation(dep, Matrix::Constant(1, 1, first.lambda), v);
  CHECK(dnep->size() == 6);

  SUBCASE("U recurrence agrees with finite differences") {
    const Complex mu(0.3, 0.7);
    const double h = 1e-5;
    const auto U = dnep->u_derivatives(mu, 1);
    const Matrix fd = (dnep->u_derivatives(mu + h, 0)[0] - dnep->u_derivatives(mu - h, 0)[0]) /
                      (2.0 * h);
    CHECK((U[1] - fd).norm() < 1e-6 * U[1].norm());
  }
  SUBCASE("native mlincomb agrees with mder") {
    SplitMix64 rng(3);
    const Matrix V = randn(6, 3, rng);
    const Complex mu(-0.2, 0.5);
    const Vector expect = dnep->mder(mu) * V.col(0) + dnep->mder(mu, 1) * V.col(1) +
                          dnep->mder(mu, 2) * V.col(2);
    CHECK((dnep->mlincomb(mu, V) - expect).norm() < 1e-10 * expect.norm());
  }
  SUBCASE("re-solving finds a different eigenvalue") {
    SolveOptions o2;
    o2.target = 0.0;
    const auto second = augnewton(dnep, o2);
    CHECK(std::abs(second.lambda - first.lambda) > 1e-4);
    CHECK(dense::min_singular_value(dep->mder(second.lambda)) < 1e-12);
  }
}

TEST_CASE("projected problem") {
  auto dep = random_dep(4, 5);
  auto proj = create_proj_nep(dep);
  SUBCASE("full basis") {
    CHECK(proj->set_projectmatrices(Matrix::Identity(4, 4), Matrix::Identity(4, 4)));
    CHECK((proj->mder(Complex(0.1, 0.2)) - dep->mder(Complex(0.1, 0.2))).norm() < 1e-14);
  }
  SUBCASE("one dimensional basis") {
    auto other = random_dep(4, 21);
    auto p1 = create_proj_nep(other);
    const Vector x = Vector::Ones(4) / 2.0;
    p1->set_projectmatrices(x, x);
    REQUIRE(p1->size() == 1);
    const Complex rf = compute_rf(*other, x, x, 0.0);
    CHECK(std::abs(p1->mder(rf)(0, 0)) < 1e-10);
    CHECK(std::abs(compute_rf(*p1, Vector::Ones(1), Vector::Ones(1), 0.0) - rf) < 1e-10);
  }
  SUBCASE("subspace containing an eigenvector") {
    SolveOptions o;
    const auto pair = augnewton(dep, o);
    SplitMix64 rng(9);
    Matrix B(4, 2);
    B.col(0) = pair.v;
    B.col(1) = randn(4, 1, rng);
    const Matrix Q = Eigen::HouseholderQR<Matrix>(B).householderQ() * Matrix::Identity(4, 2);
    proj->set_projectmatrices(Q, Q);
    CHECK(dense::min_singular_value(proj->mder(pair.lambda)) < 1e-10);
  }
  SUBCASE("rank deficient basis is reported") {
    Matrix B(4, 2);
    B.col(0) = Vector::Ones(4);
    B.col(1) = Vector::Ones(4);
    CHECK_FALSE(proj->set_projectmatrices(B, B));
  }
}

TEST_CASE("compose_affine") {
  const FunctionPair f = compose_affine(fn::exp(), 1.0, 2.0);
  CHECK(std::abs(f.scalar(0.5) - std::exp(2.0)) < 1e-13);
}

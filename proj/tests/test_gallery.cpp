#include <doctest.h>

#include <algorithm>

#include "nep/errors.hpp"
#include "nep/gallery.hpp"
#include "nep/interp.hpp"
#include "nep/serialize.hpp"
#include "nep/solvers.hpp"
#include "support.hpp"

using namespace nep;
using namespace nep::testing;

TEST_CASE("gallery names") {
  auto names = gallery_names();
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"dep0", "neuron0", "paper_spmf_5x5", "pep0",
                                          "sqrt_spmf"});
  CHECK_THROWS_AS(nep_gallery("nope"), UnknownName);
  CHECK_THROWS_AS(nep_gallery("dep0", {{"colour", 1.0}}), ArgumentError);
}

TEST_CASE("5x5 sum-of-products entry") {
  auto p = nep_gallery("paper_spmf_5x5");
  auto spmf = p->as_spmf();
  REQUIRE(spmf);
  CHECK(p->size() == 5);
  CHECK(spmf->terms() == 3);
  CHECK(spmf->functions()[1].scalar(0.0) == Complex(1.0));
  const Matrix& A = spmf->matrices()[0];
  const Matrix& B = spmf->matrices()[1];
  const Matrix& C = spmf->matrices()[2];
  CHECK((A - Matrix::Ones(5, 5)).norm() == 0.0);
  CHECK((B - Matrix::Ones(5, 5) - Matrix::Identity(5, 5)).norm() == 0.0);
  CHECK((C - B.colwise().reverse()).norm() == 0.0);
}

TEST_CASE("random entries are deterministic") {
  auto a = nep_gallery("dep0");
  auto b = nep_gallery("dep0");
  CHECK((a->mder(0.3) - b->mder(0.3)).norm() == 0.0);
  auto c = nep_gallery("dep0", {{"seed", 1.0}});
  CHECK((a->mder(0.3) - c->mder(0.3)).norm() > 0.0);
  auto big = nep_gallery("pep0", {{"n", 7.0}});
  CHECK(big->size() == 7);
}

TEST_CASE("neuron parameters") {
  GalleryParams p{{"kappa", 0.3}, {"beta", -0.5}, {"a1", 1.5}, {"a2", 2.0},
                  {"tau1", 0.1}, {"tau2", 0.3}, {"tau3", 1.0}};
  auto nrn = nep_gallery("neuron0", p);
  Matrix expect(2, 2);
  expect << -0.3 - 0.5, 1.5, 2.0, -0.3 - 0.5;
  CHECK((nrn->mder(0.0) - expect).norm() < 1e-15);
  CHECK(nrn->type_name() == "Dep");
}

TEST_CASE("neuron eigenvalues are eigenvalues") {
  auto nrn = nep_gallery("neuron0");
  for (Complex target : {Complex(0.3, 0.0), Complex(-0.46, 1.69)}) {
    SolveOptions o;
    o.target = target;
    const auto r = mslp(nrn, o);
    CHECK(dense::min_singular_value(nrn->mder(r.lambda)) < 1e-10 * nrn->mder(r.lambda).norm());
  }
}

TEST_CASE("sqrt_spmf refuses the branch cut") {
  auto s = nep_gallery("sqrt_spmf");
  CHECK_THROWS_AS(s->mder(-2.0), DomainError);
  CHECK_NOTHROW(s->mder(2.0));
}

TEST_CASE("many-term problem") {
  auto p = many_terms_spmf(20, 10, 3, 0.2);
  CHECK(p->terms() == 20);
  CHECK(std::abs(p->functions()[5].scalar(1.0) - std::exp(std::pow(6.0, 1.0 / 6.0))) < 1e-12);
  for (const Matrix& A : p->matrices())
    CHECK(((A.real().array() >= 0.0) && (A.real().array() < 1.0)).all());
}

TEST_CASE("random numbers") {
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 5; ++i) CHECK(a.next() == b.next());
  SplitMix64 zero(0);
  CHECK(zero.next() == 0xe220a8397b1dcdafULL);
  SplitMix64 rng(7);
  double mean = 0.0, sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    mean += x;
    sq += x * x;
  }
  mean /= n;
  CHECK(std::abs(mean) < 0.05);
  CHECK(std::abs(sq / n - 1.0) < 0.05);
}

TEST_CASE("Newton interpolation") {
  SUBCASE("quadratic is exact") {
    NewtonInterpolant p([](Complex x) { return x * x; }, {0.0, 1.0, 2.0});
    CHECK(p(1.5) == Complex(2.25));
  }
  SUBCASE("diagonal matrix argument") {
    NewtonInterpolant p([](Complex x) { return std::exp(x); }, chebyshev_points(8, -1.0, 1.0));
    const Vector d = Vector::LinSpaced(4, -0.5, 0.5);
    const Matrix F = p(Matrix(d.asDiagonal()));
    for (Index i = 0; i < 4; ++i) CHECK(std::abs(F(i, i) - p(d(i))) < 1e-14);
    CHECK(std::abs(F(0, 1)) == 0.0);
  }
  SUBCASE("exp on twelve Chebyshev points") {
    NewtonInterpolant p([](Complex x) { return std::exp(x); }, chebyshev_points(12, 0.0, 1.0));
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double x = i / 1000.0;
      worst = std::max(worst, std::abs(p(x) - std::exp(x)));
    }
    CHECK(worst < 1e-9);
  }
  SUBCASE("as a sum-of-products term") {
    auto interp = newton_interp_matfun([](Complex x) { return std::exp(-x); },
                                       chebyshev_points(16, -2.0, 2.0));
    auto dep = random_dep(3, 2);
    auto a = make_spmf({-Matrix::Identity(3, 3), dep->a0(), dep->delays()[0].A},
                       {fn::monomial(1), fn::constant(1.0), interp.function_pair()});
    auto exact = make_dep(dep->a0(), {{1.0, dep->delays()[0].A}});
    CHECK((a->mder(0.4) - exact->mder(0.4)).norm() < 1e-9);
  }
  SUBCASE("bad nodes") {
    auto f = [](Complex x) { return x; };
    CHECK_THROWS_AS(NewtonInterpolant(f, {1.0}), ArgumentError);
    CHECK_THROWS_AS(NewtonInterpolant(f, {1.0, 1.0}), ArgumentError);
    CHECK_THROWS_AS(NewtonInterpolant([](Complex) { return Complex(INFINITY); }, {0.0, 1.0}),
                    DomainError);
  }
}

TEST_CASE("problem serialization round trip") {
  for (const std::string name : {"dep0", "pep0", "paper_spmf_5x5", "neuron0"}) {
    CAPTURE(name);
    auto p = nep_gallery(name);
    const std::string text = serialize_problem(*p);
    auto q = deserialize_problem(text);
    CHECK(q->size() == p->size());
    for (Complex l : {Complex(0.3, 0.2), Complex(1.1, -0.4)})
      CHECK((q->mder(l, 1) - p->mder(l, 1)).norm() <= 1e-15 * std::max(1.0, p->mder(l, 1).norm()));
    CHECK(serialize_problem(*q) == text);
  }
  CHECK_THROWS_AS(deserialize_problem("{\"type\": \"pep\"}"), ArgumentError);
  CHECK_THROWS_AS(deserialize_problem("not json"), ArgumentError);
  auto closure = make_spmf({Matrix::Identity(2, 2)},
                           {FunctionPair{[](Complex z) { return z; },
                                         [](const Matrix& S) { return S; }, {}, {}, "id"}});
  CHECK_THROWS_AS(serialize_problem(*closure), ArgumentError);
}

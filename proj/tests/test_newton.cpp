#include <doctest.h>

#include "nep/dense.hpp"
#include "nep/errors.hpp"
#include "nep/gallery.hpp"
#include "nep/solvers.hpp"
#include "support.hpp"

using namespace nep;
using namespace nep::testing;

namespace {

const NewtonMethod kAll[] = {NewtonMethod::AugNewton, NewtonMethod::ResInv,
                             NewtonMethod::QuasiNewton, NewtonMethod::Mslp,
                             NewtonMethod::NewtonQr};

std::shared_ptr<Pep> diagonal_linear() {
  const Matrix A = Vector::LinSpaced(4, 1.0, 4.0).cast<Complex>().asDiagonal();
  return make_pep({A, -Matrix::Identity(4, 4)});
}

}  // namespace

TEST_CASE("start from an exact eigenpair") {
  auto lin = diagonal_linear();
  SolveOptions o;
  o.target = 3.0;
  o.v0 = Vector::Unit(4, 2);
  for (auto m : {NewtonMethod::AugNewton, NewtonMethod::Mslp, NewtonMethod::NewtonQr}) {
    CAPTURE(method_name(m));
    const auto r = run_newton(m, lin, o);
    CHECK(r.iterations <= 1);
    CHECK(std::abs(r.lambda - 3.0) < 1e-12);
  }
}

TEST_CASE("diagonal linear problem near an eigenvalue") {
  auto lin = diagonal_linear();
  SolveOptions o;
  o.target = 2.01;
  o.v0 = Vector::Ones(4);
  for (auto m : kAll) {
    CAPTURE(method_name(m));
    const auto r = run_newton(m, lin, o);
    CHECK(std::abs(r.lambda - 2.0) < 1e-10);
    if (m == NewtonMethod::ResInv) CHECK(r.iterations <= 10);
  }
}

TEST_CASE("5x5 sum-of-products example from lambda0 = 1") {
  auto p = nep_gallery("paper_spmf_5x5");
  SolveOptions o;
  o.target = 1.0;
  o.v0 = Vector::Unit(5, 0);
  for (auto m : {NewtonMethod::AugNewton, NewtonMethod::Mslp, NewtonMethod::NewtonQr,
                 NewtonMethod::QuasiNewton}) {
    CAPTURE(method_name(m));
    const auto r = run_newton(m, p, o);
    CHECK(std::abs(r.lambda - 0.557832) < 1e-4);
    CHECK(relative_residual(*p, r.lambda, r.v) < 1e-10);
  }
}

TEST_CASE("random DEP from several starts") {
  auto dep = random_dep(5, 31);
  SplitMix64 rng(4);
  int converged = 0;
  for (int s = 0; s < 10; ++s) {
    SolveOptions o;
    o.target = Complex(rng.normal(), rng.normal());
    try {
      const auto r = augnewton(dep, o);
      CHECK(relative_residual(*dep, r.lambda, r.v) < o.tol);
      ++converged;
    } catch (const NoConvergence&) {
    }
  }
  CHECK(converged > 0);
}

TEST_CASE("Newton variants agree with the companion oracle on a PEP") {
  auto pep = random_pep(4, 41);
  const auto oracle = companion_eigenvalues(pep->coefficients());
  for (auto m : kAll) {
    CAPTURE(method_name(m));
    SolveOptions o;
    o.target = oracle[0] + 0.01;
    try {
      const auto r = run_newton(m, pep, o);
      CHECK(distance_to_set(r.lambda, oracle) < 1e-8);
    } catch (const NoConvergence&) {
      // Only the limit of a converged run is checked.
    }
  }
}

TEST_CASE("cross-solver agreement on a DEP") {
  auto dep = random_dep(4, 51);
  SolveOptions o;
  o.target = -0.3;
  const auto a = augnewton(dep, o);
  o.target = a.lambda + 1e-3;
  const auto b = quasinewton(dep, o);
  const auto c = mslp(dep, o);
  CHECK(std::abs(a.lambda - b.lambda) < 1e-8);
  CHECK(std::abs(a.lambda - c.lambda) < 1e-8);
  CHECK(b.factorizations == 1);
}

TEST_CASE("resinv rejects a singular shift") {
  auto lin = diagonal_linear();
  SolveOptions o;
  o.target = 2.0;
  CHECK_THROWS_AS(resinv(lin, o), SingularShift);
}

TEST_CASE("iteration limit") {
  auto dep = random_dep(4, 1);
  SolveOptions o;
  o.maxit = 1;
  o.tol = 1e-15;
  o.target = 5.0;
  CHECK_THROWS_AS(augnewton(dep, o), NoConvergence);
}

TEST_CASE("option validation") {
  auto dep = random_dep(3, 1);
  SolveOptions o;
  o.v0 = Vector::Ones(4);
  CHECK_THROWS_AS(augnewton(dep, o), ArgumentError);
  o.v0.reset();
  o.tol = -1.0;
  CHECK_THROWS_AS(mslp(dep, o), ArgumentError);
}

TEST_CASE("Armijo damping") {
  const ErrMeasure quad = [](Complex l, const Vector&) { return std::norm(l); };
  SUBCASE("full step accepted") {
    const auto s = armijo_damp(1.0, Vector::Ones(1), -1.0, Vector::Zero(1), 1.0, quad);
    CHECK(s.step == 1.0);
    CHECK_FALSE(s.stagnated);
  }
  SUBCASE("ascent direction") {
    const auto s = armijo_damp(1.0, Vector::Ones(1), 1.0, Vector::Zero(1), 1.0, quad);
    CHECK(s.step == std::ldexp(1.0, -10));
    CHECK(s.stagnated);
  }
  SUBCASE("damped history is not worse") {
    auto dep = random_dep(4, 61);
    SolveOptions o;
    o.target = 1.0;
    const auto damped = augnewton(dep, o);
    o.armijo = false;
    try {
      const auto plain = augnewton(dep, o);
      const size_t n = std::min(damped.history.size(), plain.history.size());
      for (size_t i = 1; i < n && damped.history[i] > 1e-10; ++i)
        CHECK(damped.history[i] <= plain.history[i] * (1.0 + 1e-8));
    } catch (const NoConvergence&) {
    }
  }
}

TEST_CASE("deflation driver") {
  auto dep = nep_gallery("dep0");
  SolveOptions o;
  SUBCASE("k=1 is the inner solver") {
    const auto out = solve_k_eigenpairs(dep, 1, o);
    REQUIRE(out.pairs.size() == 1);
    CHECK(std::abs(out.pairs[0].lambda - augnewton(dep, o).lambda) < 1e-10);
  }
  SUBCASE("k=2 gives a distinct second eigenvalue") {
    const auto out = solve_k_eigenpairs(dep, 2, o);
    REQUIRE(out.complete());
    REQUIRE(out.pairs.size() == 2);
    CHECK(std::abs(out.pairs[0].lambda - out.pairs[1].lambda) > 1e-4);
    CHECK(dense::min_singular_value(dep->mder(out.pairs[1].lambda)) < 1e-12);
  }
  SUBCASE("k=3 on a 3x3 PEP") {
    auto pep = random_pep(3, 71);
    const auto oracle = companion_eigenvalues(pep->coefficients());
    const auto out = solve_k_eigenpairs(pep, 3, o, NewtonMethod::Mslp);
    REQUIRE(out.complete());
    REQUIRE(out.pairs.size() == 3);
    std::vector<Complex> found;
    for (const auto& p : out.pairs) {
      found.push_back(p.lambda);
      CHECK(p.residual < 1e-10);
    }
    CHECK(one_sided(found, oracle) < 1e-8);
    CHECK(std::abs(found[0] - found[1]) > 1e-6);
    CHECK(std::abs(found[1] - found[2]) > 1e-6);
    CHECK(std::abs(found[0] - found[2]) > 1e-6);
  }
  SUBCASE("a stalled stage keeps the earlier pairs") {
    auto pep = random_pep(3, 74);
    const auto oracle = companion_eigenvalues(pep->coefficients());
    const auto out = solve_k_eigenpairs(pep, 3, o, NewtonMethod::NewtonQr);
    CHECK_FALSE(out.complete());
    CHECK(out.failed_index == static_cast<int>(out.pairs.size()));
    for (const auto& p : out.pairs) CHECK(distance_to_set(p.lambda, oracle) < 1e-8);
  }
}

TEST_CASE("method names") {
  for (auto m : kAll) CHECK(parse_newton_method(method_name(m)) == m);
  CHECK_THROWS_AS(parse_newton_method("bogus"), UnknownName);
}

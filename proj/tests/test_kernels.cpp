#include <doctest.h>

#include <vector>

#include "nep/dense.hpp"
#include "nep/errors.hpp"
#include "nep/kernels.hpp"
#include "nep/random.hpp"

using namespace nep;

namespace {

std::vector<Complex> sample(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Complex> v(n);
  for (auto& z : v) z = rng.complex_normal();
  return v;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("AVX2 kernels match the scalar reference") {
  if (!kernels::avx2_available()) {
    MESSAGE("AVX2 unavailable; only the scalar path is exercised");
    return;
  }
  // Lengths cover empty input, the vector tail and several full blocks.
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 31u, 64u, 257u, 1000u}) {
    CAPTURE(n);
    const auto x = sample(n, 1 + n), y = sample(n, 1000 + n);
    const double tol = 1e-14 * std::max<std::size_t>(1, n);
    CHECK(rel(kernels::avx2::dotc(x, y), kernels::scalar::dotc(x, y)) <= tol);
    CHECK(std::abs(kernels::avx2::nrm2(x) - kernels::scalar::nrm2(x)) <=
          tol * std::max(1.0, kernels::scalar::nrm2(x)));

    const Complex a(0.3, -1.7);
    auto ya = y, ys = y;
    kernels::avx2::axpy(a, x, ya);
    kernels::scalar::axpy(a, x, ys);
    for (std::size_t i = 0; i < n; ++i) CHECK(rel(ya[i], ys[i]) <= 1e-15);

    auto xa = x, xs = x;
    kernels::avx2::scal(a, xa);
    kernels::scalar::scal(a, xs);
    for (std::size_t i = 0; i < n; ++i) CHECK(rel(xa[i], xs[i]) <= 1e-15);
  }
}

TEST_CASE("nrm2 avoids overflow") {
  std::vector<Complex> big(9, Complex(1e300, -1e300));
  const double expect = std::sqrt(18.0) * 1e300;
  CHECK(kernels::scalar::nrm2(big) == doctest::Approx(expect).epsilon(1e-14));
  if (kernels::avx2_available())
    CHECK(kernels::avx2::nrm2(big) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("backend selection") {
  const auto before = kernels::active_backend();
  kernels::set_backend(kernels::Backend::Scalar);
  CHECK(kernels::active_backend() == kernels::Backend::Scalar);
  CHECK(kernels::backend_name(kernels::Backend::Scalar) == "scalar");
  if (!kernels::avx2_available())
    CHECK_THROWS_AS(kernels::set_backend(kernels::Backend::Avx2), ArgumentError);
  kernels::set_backend(before);
}

TEST_CASE("orthogonalization is backend independent") {
  SplitMix64 rng(5);
  const Index n = 50, m = 12;
  Matrix Q = Eigen::HouseholderQR<Matrix>(random_complex_matrix(n, m, rng)).householderQ() *
             Matrix::Identity(n, m);
  const Vector w0 = random_complex_matrix(n, 1, rng);
  const auto before = kernels::active_backend();

  kernels::set_backend(kernels::Backend::Scalar);
  Vector ws = w0;
  double ns = 0.0;
  const Vector hs = dense::orthogonalize(Q, m, ws, &ns);
  CHECK((Q.adjoint() * ws).norm() < 1e-13 * ws.norm());

  if (kernels::avx2_available()) {
    kernels::set_backend(kernels::Backend::Avx2);
    Vector wa = w0;
    double na = 0.0;
    const Vector ha = dense::orthogonalize(Q, m, wa, &na);
    CHECK((ha - hs).norm() < 1e-13 * hs.norm());
    CHECK((wa - ws).norm() < 1e-13 * ws.norm());
    CHECK(std::abs(na - ns) < 1e-13 * ns);
  }
  kernels::set_backend(before);
}

TEST_CASE("nrm2 avoids underflow") {
  std::vector<Complex> tiny(5, Complex(3e-300, 4e-300));
  const double expect = std::sqrt(5.0) * 5e-300;
  CHECK(kernels::scalar::nrm2(tiny) == doctest::Approx(expect).epsilon(1e-14));
  if (kernels::avx2_available())
    CHECK(kernels::avx2::nrm2(tiny) == doctest::Approx(expect).epsilon(1e-14));
}

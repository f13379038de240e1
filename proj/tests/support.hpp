#pragma once

// Oracles and fixtures shared by the test programs.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "nep/dense.hpp"
#include "nep/problems.hpp"
#include "nep/random.hpp"

namespace nep::testing {

inline Matrix randn(Index r, Index c, SplitMix64& rng) { return random_complex_matrix(r, c, rng); }

inline std::shared_ptr<Dep> random_dep(Index n, std::uint64_t seed, int delays = 1) {
  SplitMix64 rng(seed);
  Matrix A0 = random_normal_matrix(n, n, rng);
  std::vector<DelayTerm> d;
  for (int i = 0; i < delays; ++i) d.push_back({0.5 + 0.5 * i, random_normal_matrix(n, n, rng)});
  return make_dep(A0, d);
}

inline std::shared_ptr<Pep> random_pep(Index n, std::uint64_t seed, int degree = 2) {
  SplitMix64 rng(seed);
  std::vector<Matrix> c;
  for (int i = 0; i <= degree; ++i) c.push_back(random_normal_matrix(n, n, rng));
  return make_pep(c);
}

/// A0 + lambda A1 + exp(-lambda) A2 + lambda^2 A3 written as a sum of products.
inline std::shared_ptr<Spmf> random_spmf(Index n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Matrix> m;
  for (int i = 0; i < 4; ++i) m.push_back(random_normal_matrix(n, n, rng));
  return make_spmf(m, {fn::constant(1.0), fn::monomial(1), fn::exp(-1.0), fn::monomial(2)});
}

/// Eigenvalues of sum_k lambda^k A_k from the first companion pencil.
inline std::vector<Complex> companion_eigenvalues(const std::vector<Matrix>& A) {
  const Index n = A[0].rows();
  const Index d = static_cast<Index>(A.size()) - 1;
  Matrix L = Matrix::Zero(n * d, n * d), R = Matrix::Identity(n * d, n * d);
  for (Index i = 0; i + 1 < d; ++i) L.block(i * n, (i + 1) * n, n, n).setIdentity();
  for (Index k = 0; k < d; ++k) L.block((d - 1) * n, k * n, n, n) = -A[k];
  R.bottomRightCorner(n, n) = A[d];
  const auto ge = dense::generalized_eigen(L, R, false);
  std::vector<Complex> out;
  for (Index j = 0; j < n * d; ++j)
    if (ge.finite(j)) out.push_back(ge.value(j));
  return out;
}

inline double distance_to_set(Complex z, const std::vector<Complex>& set) {
  double best = std::numeric_limits<double>::infinity();
  for (Complex s : set) best = std::min(best, std::abs(z - s));
  return best;
}

/// Largest distance from an element of `a` to the set `b`.
inline double one_sided(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double worst = 0.0;
  for (Complex z : a) worst = std::max(worst, distance_to_set(z, b));
  return worst;
}

inline double hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  return std::max(one_sided(a, b), one_sided(b, a));
}

/// Central difference of M^(k) in the complex direction 1.
inline Matrix fd_derivative(const Nep& nep, Complex lambda, int k, double h = 1e-4) {
  return (nep.mder(lambda + h, k) - nep.mder(lambda - h, k)) / (2.0 * h);
}

inline Matrix fd_second(const Nep& nep, Complex lambda, double h = 1e-4) {
  return (nep.mder(lambda + h) - 2.0 * nep.mder(lambda) + nep.mder(lambda - h)) / (h * h);
}

/// Trapezoidal rule for (1/2 pi i) \oint M(xi) V (xi I - S)^{-1} dxi on a circle.
inline Matrix mm_quadrature(const Nep& nep, const Matrix& S, const Matrix& V, Complex center,
                            double radius, int nodes) {
  const Index p = S.rows();
  Matrix acc = Matrix::Zero(nep.size(), p);
  for (int j = 0; j < nodes; ++j) {
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi * j / nodes);
    const Complex xi = center + radius * w;
    const Matrix R = (xi * Matrix::Identity(p, p) - S).inverse();
    acc += (radius * w / static_cast<double>(nodes)) * (nep.mder(xi) * V * R);
  }
  return acc;
}

/// f[sigma I + alpha S, sigma I] = sum_{j>=1} f^(j)(sigma) / j! (alpha S)^(j-1), given
/// the derivatives through `deriv(j)`.
template <class Deriv>
Matrix series_divided_difference(Deriv deriv, const Matrix& S, Complex alpha, int terms = 120) {
  const Index k = S.rows();
  Matrix power = Matrix::Identity(k, k);
  Matrix acc = Matrix::Zero(k, k);
  double fact = 1.0;
  for (int j = 1; j <= terms; ++j) {
    fact *= j;
    acc += (deriv(j) / fact) * power;
    power = power * (alpha * S);
  }
  return acc;
}

}  // namespace nep::testing

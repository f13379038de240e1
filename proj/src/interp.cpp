#include "nep/interp.hpp"

#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_complex.hpp>

#include "nep/errors.hpp"

namespace nep {

namespace {

using Quad = boost::multiprecision::cpp_complex_quad;

bool finite(const Quad& z) {
  using boost::multiprecision::isfinite;
  return isfinite(z.real()) && isfinite(z.imag());
}

Complex round(const Quad& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace

NewtonInterpolant::NewtonInterpolant(const std::function<Complex(Complex)>& f,
                                     std::vector<Complex> nodes)
    : nodes_(std::move(nodes)) {
  const std::size_t m = nodes_.size();
  if (m < 2) throw ArgumentError("interpolation needs at least two nodes");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (nodes_[i] == nodes_[j])
        throw ArgumentError("duplicate interpolation node at index " + std::to_string(j));

  std::vector<Quad> x(m), d(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Complex fi = f(nodes_[i]);
    if (!std::isfinite(fi.real()) || !std::isfinite(fi.imag()))
      throw DomainError("interpolated function is not finite at node " + std::to_string(i));
    x[i] = Quad(nodes_[i].real(), nodes_[i].imag());
    d[i] = Quad(fi.real(), fi.imag());
  }
  coeffs_.resize(m);
  coeffs_[0] = round(d[0]);
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = m - 1; i >= level; --i) {
      d[i] = (d[i] - d[i - 1]) / (x[i] - x[i - level]);
      if (!finite(d[i])) throw DomainError("divided-difference table overflow");
    }
    coeffs_[level] = round(d[level]);
    if (!std::isfinite(std::abs(coeffs_[level])))
      throw DomainError("divided-difference coefficient overflows double precision");
  }
}

Complex NewtonInterpolant::operator()(Complex x) const {
  const std::size_t m = coeffs_.size();
  Complex p = coeffs_[m - 1];
  for (std::size_t j = m - 1; j-- > 0;) p = (x - nodes_[j]) * p + coeffs_[j];
  return p;
}

Matrix NewtonInterpolant::operator()(const Matrix& S) const {
  const std::size_t m = coeffs_.size();
  const Matrix I = Matrix::Identity(S.rows(), S.cols());
  Matrix P = coeffs_[m - 1] * I;
  for (std::size_t j = m - 1; j-- > 0;) {
    Matrix next = S * P - nodes_[j] * P;
    next.diagonal().array() += coeffs_[j];
    P = std::move(next);
  }
  return P;
}

FunctionPair NewtonInterpolant::function_pair(std::string label) const {
  FunctionPair fp;
  auto self = std::make_shared<NewtonInterpolant>(*this);
  fp.scalar = [self](Complex x) { return (*self)(x); };
  fp.matrix = [self](const Matrix& S) { return (*self)(S); };
  fp.label = std::move(label);
  return fp;
}

NewtonInterpolant newton_interp_matfun(const std::function<Complex(Complex)>& f,
                                       std::vector<Complex> nodes) {
  return NewtonInterpolant(f, std::move(nodes));
}

std::vector<Complex> chebyshev_points(int n, double a, double b) {
  if (n < 1) throw ArgumentError("chebyshev_points: n must be positive");
  std::vector<Complex> x(n);
  for (int k = 0; k < n; ++k) {
    const double t = std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * n));
    x[k] = 0.5 * (a + b) + 0.5 * (b - a) * t;
  }
  return x;
}

}  // namespace nep

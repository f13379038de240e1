#pragma once

#include <complex>
#include <functional>
#include <string_view>

#include <Eigen/Dense>

namespace nep {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Maps an approximate eigenpair (lambda, v) to a nonnegative error estimate.
using ErrMeasure = std::function<double(Complex, const Vector&)>;

/// Receives one formatted log line per solver event.
using LogSink = std::function<void(std::string_view)>;

}  // namespace nep

namespace nep {

/// z^k by repeated squaring; ipow(0, 0) == 1.
inline Complex ipow(Complex z, int k) {
  Complex result(1.0, 0.0);
  bool invert = k < 0;
  unsigned e = static_cast<unsigned>(invert ? -k : k);
  while (e) {
    if (e & 1u) result *= z;
    e >>= 1u;
    if (e) z *= z;
  }
  return invert ? Complex(1.0) / result : result;
}

}  // namespace nep

#include "nep/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>

#include "nep/errors.hpp"

namespace nep::kernels {

namespace scalar {

Complex dotc(std::span<const Complex> x, std::span<const Complex> y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

double nrm2(std::span<const Complex> x) {
  double s = 0.0;
  for (const auto& z : x) s += z.real() * z.real() + z.imag() * z.imag();
  if (std::isfinite(s) && (s == 0.0 || s >= kNrm2Small)) return std::sqrt(s);
  // Overflow or underflow of the squares: rescale by the largest component.
  double m = 0.0;
  for (const auto& z : x) m = std::max({m, std::abs(z.real()), std::abs(z.imag())});
  if (m == 0.0 || !std::isfinite(m)) return m == 0.0 ? 0.0 : m;
  double t = 0.0;
  for (const auto& z : x) {
    const double r = z.real() / m, i = z.imag() / m;
    t += r * r + i * i;
  }
  return m * std::sqrt(t);
}

void scal(Complex a, std::span<Complex> x) {
  for (auto& z : x) z *= a;
}

}  // namespace scalar

#ifndef NEP_HAVE_AVX2_KERNELS
namespace avx2 {
Complex dotc(std::span<const Complex> x, std::span<const Complex> y) { return scalar::dotc(x, y); }
void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y) { scalar::axpy(a, x, y); }
double nrm2(std::span<const Complex> x) { return scalar::nrm2(x); }
void scal(Complex a, std::span<Complex> x) { scalar::scal(a, x); }
}  // namespace avx2
#endif

bool avx2_available() {
#if defined(NEP_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return ok;
#else
  return false;
#endif
}

namespace {

Backend detect() {
  if (const char* env = std::getenv("NEP_KERNELS"); env && std::strcmp(env, "scalar") == 0)
    return Backend::Scalar;
  return avx2_available() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{detect()};
  return slot;
}

}  // namespace

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::Avx2 && !avx2_available())
    throw ArgumentError("AVX2 kernels are not available on this CPU/build");
  backend_slot().store(b, std::memory_order_relaxed);
}

std::string_view backend_name(Backend b) {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

Complex dotc(std::span<const Complex> x, std::span<const Complex> y) {
  return active_backend() == Backend::Avx2 ? avx2::dotc(x, y) : scalar::dotc(x, y);
}

void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
  if (active_backend() == Backend::Avx2)
    avx2::axpy(a, x, y);
  else
    scalar::axpy(a, x, y);
}

double nrm2(std::span<const Complex> x) {
  return active_backend() == Backend::Avx2 ? avx2::nrm2(x) : scalar::nrm2(x);
}

void scal(Complex a, std::span<Complex> x) {
  if (active_backend() == Backend::Avx2)
    avx2::scal(a, x);
  else
    scalar::scal(a, x);
}

}  // namespace nep::kernels

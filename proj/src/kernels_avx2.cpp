// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include <immintrin.h>

#include <cmath>

#include "nep/kernels.hpp"

namespace nep::kernels::avx2 {

namespace {

inline const double* raw(std::span<const Complex> x) {
  return reinterpret_cast<const double*>(x.data());
}
inline double* raw(std::span<Complex> x) { return reinterpret_cast<double*>(x.data()); }

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

}  // namespace

// Two complex numbers per 256-bit lane: [re0 im0 re1 im1].
Complex dotc(std::span<const Complex> x, std::span<const Complex> y) {
  const std::size_t n = x.size();
  const double* px = raw(x);
  const double* py = raw(y);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(px + 2 * i);
    __m256d vy = _mm256_loadu_pd(py + 2 * i);
    acc_re = _mm256_fmadd_pd(vx, vy, acc_re);                // xr*yr, xi*yi
    __m256d vy_sw = _mm256_permute_pd(vy, 0b0101);           // yi, yr
    acc_im = _mm256_fmadd_pd(vx, vy_sw, acc_im);             // xr*yi, xi*yr
  }
  double re = hsum(acc_re);
  alignas(32) double t[4];
  _mm256_store_pd(t, acc_im);
  double im = (t[0] - t[1]) + (t[2] - t[3]);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
  const std::size_t n = x.size();
  const double* px = raw(x);
  double* py = raw(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(px + 2 * i);
    __m256d vy = _mm256_loadu_pd(py + 2 * i);
    __m256d t = _mm256_mul_pd(ai, _mm256_permute_pd(vx, 0b0101));  // ai*xi, ai*xr
    __m256d prod = _mm256_fmaddsub_pd(ar, vx, t);                  // ar*xr-ai*xi, ar*xi+ai*xr
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(vy, prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

double nrm2(std::span<const Complex> x) {
  const std::size_t n = x.size();
  const double* px = raw(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d v = _mm256_loadu_pd(px + 2 * i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += std::norm(x[i]);
  if (!std::isfinite(s) || (s != 0.0 && s < scalar::kNrm2Small)) return scalar::nrm2(x);
  return std::sqrt(s);
}

void scal(Complex a, std::span<Complex> x) {
  const std::size_t n = x.size();
  double* px = raw(x);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(px + 2 * i);
    __m256d t = _mm256_mul_pd(ai, _mm256_permute_pd(vx, 0b0101));
    _mm256_storeu_pd(px + 2 * i, _mm256_fmaddsub_pd(ar, vx, t));
  }
  for (; i < n; ++i) x[i] *= a;
}

}  // namespace nep::kernels::avx2

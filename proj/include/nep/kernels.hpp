#pragma once

// Complex BLAS-1 style kernels used by the Krylov orthogonalization loops.
// Each kernel has a portable scalar reference and, on x86-64, an AVX2/FMA
// variant. The variant is chosen once at first use from CPUID; the
// environment variable NEP_KERNELS=scalar forces the reference path.

#include <span>
#include <string_view>

#include "nep/types.hpp"

namespace nep::kernels {

enum class Backend { Scalar, Avx2 };

/// conj(x)^T y
Complex dotc(std::span<const Complex> x, std::span<const Complex> y);
/// y += a * x
void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y);
/// ||x||_2
double nrm2(std::span<const Complex> x);
/// x *= a
void scal(Complex a, std::span<Complex> x);

Backend active_backend();
void set_backend(Backend b);  // throws ArgumentError if unavailable
bool avx2_available();
std::string_view backend_name(Backend b);

namespace scalar {
/// Sums of squares below this are recomputed with rescaling in nrm2.
inline constexpr double kNrm2Small = 1e-280;
Complex dotc(std::span<const Complex> x, std::span<const Complex> y);
void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y);
double nrm2(std::span<const Complex> x);
void scal(Complex a, std::span<Complex> x);
}  // namespace scalar

namespace avx2 {
Complex dotc(std::span<const Complex> x, std::span<const Complex> y);
void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y);
double nrm2(std::span<const Complex> x);
void scal(Complex a, std::span<Complex> x);
}  // namespace avx2

}  // namespace nep::kernels

// kernels.hpp - hot loops with scalar reference and SIMD variants
//
// The variant is picked once at first use from the CPU (AVX2+FMA on x86-64,
// NEON on aarch64). QNOISE_SIMD=scalar|avx2|neon overrides it; force() does the
// same programmatically, which is how the equivalence tests run both paths.

#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace qnoise::kernels {

enum class Isa { scalar, avx2, neon };

std::string name(Isa isa);
bool available(Isa isa);
Isa active();
// Throws InvalidArgument if the variant is not built or not supported by this CPU.
void force(Isa isa);
void reset();

// out[j] = dt * sum_k w_k f[k] exp(-(sigma + i omegas[j]) (t0 + k dt)),
// trapezoid weights w_0 = w_{n-1} = 1/2, else 1.
void laplace_sum(const double* f, std::size_t n, double dt, double t0, double sigma, const double* omegas,
                 std::size_t m, std::complex<double>* out);

// acc += sum_{k=1}^{K} M_k h_k, M_k column-major 4x4 at kernel + 16 k,
// h_k = state at newest - 4 (k - 1) (states stored as 4 contiguous doubles, oldest first).
void memory_sum(const double* kernel, const double* newest, std::size_t K, double* acc);

namespace scalar {
void laplace_sum(const double* f, std::size_t n, double dt, double t0, double sigma, const double* omegas,
                 std::size_t m, std::complex<double>* out);
void memory_sum(const double* kernel, const double* newest, std::size_t K, double* acc);
} // namespace scalar

namespace avx2 {
void laplace_sum(const double* f, std::size_t n, double dt, double t0, double sigma, const double* omegas,
                 std::size_t m, std::complex<double>* out);
void memory_sum(const double* kernel, const double* newest, std::size_t K, double* acc);
} // namespace avx2

// out holds m interleaved (re, im) pairs; this file is built without the C++ library.
namespace neon {
void laplace_sum(const double* f, std::size_t n, double dt, double t0, double sigma, const double* omegas,
                 std::size_t m, double* out);
void memory_sum(const double* kernel, const double* newest, std::size_t K, double* acc);
} // namespace neon

// Phasors are recomputed exactly every this many samples.
inline constexpr std::size_t phasor_restart = 256;

} // namespace qnoise::kernels

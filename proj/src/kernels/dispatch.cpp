#include <atomic>
#include <cstdlib>

#include "qnoise/error.hpp"
#include "qnoise/kernels.hpp"

namespace qnoise::kernels {

namespace {

// -1 = not yet chosen
std::atomic<int> chosen{-1};

bool cpu_has(Isa isa) {
    switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(QNOISE_HAVE_AVX2)
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    case Isa::neon:
#if defined(QNOISE_HAVE_NEON)
        return true;
#else
        return false;
#endif
    }
    return false;
}

Isa detect() {
    if (const char* env = std::getenv("QNOISE_SIMD")) {
        const std::string want(env);
        for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
            if (want == name(isa) && cpu_has(isa)) return isa;
    }
    if (cpu_has(Isa::avx2)) return Isa::avx2;
    if (cpu_has(Isa::neon)) return Isa::neon;
    return Isa::scalar;
}

} // namespace

std::string name(Isa isa) {
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
    }
    return "unknown";
}

bool available(Isa isa) { return cpu_has(isa); }

Isa active() {
    int c = chosen.load(std::memory_order_acquire);
    if (c < 0) {
        c = static_cast<int>(detect());
        chosen.store(c, std::memory_order_release);
    }
    return static_cast<Isa>(c);
}

void force(Isa isa) {
    if (!cpu_has(isa)) throw InvalidArgument("kernels: variant '" + name(isa) + "' is not available here");
    chosen.store(static_cast<int>(isa), std::memory_order_release);
}

void reset() { chosen.store(-1, std::memory_order_release); }

void laplace_sum(const double* f, std::size_t n, double dt, double t0, double sigma, const double* omegas,
                 std::size_t m, std::complex<double>* out) {
    switch (active()) {
#if defined(QNOISE_HAVE_AVX2)
    case Isa::avx2: return avx2::laplace_sum(f, n, dt, t0, sigma, omegas, m, out);
#endif
#if defined(QNOISE_HAVE_NEON)
    case Isa::neon: return neon::laplace_sum(f, n, dt, t0, sigma, omegas, m, reinterpret_cast<double*>(out));
#endif
    default: return scalar::laplace_sum(f, n, dt, t0, sigma, omegas, m, out);
    }
}

void memory_sum(const double* kernel, const double* newest, std::size_t K, double* acc) {
    switch (active()) {
#if defined(QNOISE_HAVE_AVX2)
    case Isa::avx2: return avx2::memory_sum(kernel, newest, K, acc);
#endif
#if defined(QNOISE_HAVE_NEON)
    case Isa::neon: return neon::memory_sum(kernel, newest, K, acc);
#endif
    default: return scalar::memory_sum(kernel, newest, K, acc);
    }
}

} // namespace qnoise::kernels

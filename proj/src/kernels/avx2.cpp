#include <immintrin.h>

#include <cmath>

#include "qnoise/kernels.hpp"

namespace qnoise::kernels::avx2 {

void laplace_sum(const double* f, std::size_t n, double dt, double t0, double sigma, const double* omegas,
                 std::size_t m, std::complex<double>* out) {
    for (std::size_t j0 = 0; j0 < m; j0 += 4) {
        const std::size_t lanes = m - j0 < 4 ? m - j0 : 4;
        alignas(32) double w[4], zr[4], zi[4], pr[4], pi[4];
        for (std::size_t l = 0; l < 4; ++l) {
            w[l] = omegas[j0 + (l < lanes ? l : 0)];
            const std::complex<double> z = std::exp(-std::complex<double>(sigma, w[l]) * dt);
            zr[l] = z.real();
            zi[l] = z.imag();
        }
        const __m256d vzr = _mm256_load_pd(zr), vzi = _mm256_load_pd(zi);
        __m256d ar = _mm256_setzero_pd(), ai = _mm256_setzero_pd();
        __m256d vpr = _mm256_setzero_pd(), vpi = _mm256_setzero_pd();
        for (std::size_t k = 0; k < n; ++k) {
            if (k % phasor_restart == 0) {
                const double t = t0 + static_cast<double>(k) * dt;
                for (int l = 0; l < 4; ++l) {
                    const std::complex<double> p = std::exp(-std::complex<double>(sigma, w[l]) * t);
                    pr[l] = p.real();
                    pi[l] = p.imag();
                }
                vpr = _mm256_load_pd(pr);
                vpi = _mm256_load_pd(pi);
            }
            const __m256d fk = _mm256_set1_pd((k == 0 || k + 1 == n) ? 0.5 * f[k] : f[k]);
            ar = _mm256_fmadd_pd(fk, vpr, ar);
            ai = _mm256_fmadd_pd(fk, vpi, ai);
            const __m256d nr = _mm256_fmsub_pd(vpr, vzr, _mm256_mul_pd(vpi, vzi));
            vpi = _mm256_fmadd_pd(vpr, vzi, _mm256_mul_pd(vpi, vzr));
            vpr = nr;
        }
        alignas(32) double rr[4], ri[4];
        _mm256_store_pd(rr, ar);
        _mm256_store_pd(ri, ai);
        for (std::size_t l = 0; l < lanes; ++l) out[j0 + l] = {dt * rr[l], dt * ri[l]};
    }
}

void memory_sum(const double* kernel, const double* newest, std::size_t K, double* acc) {
    __m256d a = _mm256_setzero_pd(), b = _mm256_setzero_pd();
    std::size_t k = 1;
    for (; k + 1 <= K; k += 2) {
        const double* M = kernel + 16 * k;
        const double* h = newest - 4 * (k - 1);
        a = _mm256_fmadd_pd(_mm256_loadu_pd(M + 0), _mm256_broadcast_sd(h + 0), a);
        a = _mm256_fmadd_pd(_mm256_loadu_pd(M + 4), _mm256_broadcast_sd(h + 1), a);
        a = _mm256_fmadd_pd(_mm256_loadu_pd(M + 8), _mm256_broadcast_sd(h + 2), a);
        a = _mm256_fmadd_pd(_mm256_loadu_pd(M + 12), _mm256_broadcast_sd(h + 3), a);
        const double* M2 = M + 16;
        const double* h2 = h - 4;
        b = _mm256_fmadd_pd(_mm256_loadu_pd(M2 + 0), _mm256_broadcast_sd(h2 + 0), b);
        b = _mm256_fmadd_pd(_mm256_loadu_pd(M2 + 4), _mm256_broadcast_sd(h2 + 1), b);
        b = _mm256_fmadd_pd(_mm256_loadu_pd(M2 + 8), _mm256_broadcast_sd(h2 + 2), b);
        b = _mm256_fmadd_pd(_mm256_loadu_pd(M2 + 12), _mm256_broadcast_sd(h2 + 3), b);
    }
    if (k == K) {
        const double* M = kernel + 16 * k;
        const double* h = newest - 4 * (k - 1);
        a = _mm256_fmadd_pd(_mm256_loadu_pd(M + 0), _mm256_broadcast_sd(h + 0), a);
        a = _mm256_fmadd_pd(_mm256_loadu_pd(M + 4), _mm256_broadcast_sd(h + 1), a);
        a = _mm256_fmadd_pd(_mm256_loadu_pd(M + 8), _mm256_broadcast_sd(h + 2), a);
        a = _mm256_fmadd_pd(_mm256_loadu_pd(M + 12), _mm256_broadcast_sd(h + 3), a);
    }
    _mm256_storeu_pd(acc, _mm256_add_pd(_mm256_loadu_pd(acc), _mm256_add_pd(a, b)));
}

} // namespace qnoise::kernels::avx2

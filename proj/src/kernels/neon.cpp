// Built for aarch64 only. Uses compiler builtins instead of the C++ library.
#include <arm_neon.h>

namespace qnoise::kernels::neon {

using size_type = decltype(sizeof(0));

namespace {
constexpr size_type restart = 256;

// exp(-(sigma + i w) t) as (re, im)
inline void phasor(double sigma, double w, double t, double& re, double& im) {
    const double mag = __builtin_exp(-sigma * t);
    re = mag * __builtin_cos(w * t);
    im = -mag * __builtin_sin(w * t);
}
} // namespace

void laplace_sum(const double* f, size_type n, double dt, double t0, double sigma, const double* omegas,
                 size_type m, double* out) {
    for (size_type j0 = 0; j0 < m; j0 += 2) {
        const size_type lanes = m - j0 < 2 ? m - j0 : 2;
        double w[2], zr[2], zi[2], pr[2], pi[2];
        for (size_type l = 0; l < 2; ++l) {
            w[l] = omegas[j0 + (l < lanes ? l : 0)];
            phasor(sigma, w[l], dt, zr[l], zi[l]);
        }
        const float64x2_t vzr = vld1q_f64(zr), vzi = vld1q_f64(zi);
        float64x2_t ar = vdupq_n_f64(0.0), ai = vdupq_n_f64(0.0);
        float64x2_t vpr = ar, vpi = ar;
        for (size_type k = 0; k < n; ++k) {
            if (k % restart == 0) {
                const double t = t0 + static_cast<double>(k) * dt;
                for (size_type l = 0; l < 2; ++l) phasor(sigma, w[l], t, pr[l], pi[l]);
                vpr = vld1q_f64(pr);
                vpi = vld1q_f64(pi);
            }
            const float64x2_t fk = vdupq_n_f64((k == 0 || k + 1 == n) ? 0.5 * f[k] : f[k]);
            ar = vfmaq_f64(ar, fk, vpr);
            ai = vfmaq_f64(ai, fk, vpi);
            const float64x2_t nr = vfmsq_f64(vmulq_f64(vpr, vzr), vpi, vzi);
            vpi = vfmaq_f64(vmulq_f64(vpi, vzr), vpr, vzi);
            vpr = nr;
        }
        double rr[2], ri[2];
        vst1q_f64(rr, ar);
        vst1q_f64(ri, ai);
        for (size_type l = 0; l < lanes; ++l) {
            out[2 * (j0 + l)] = dt * rr[l];
            out[2 * (j0 + l) + 1] = dt * ri[l];
        }
    }
}

void memory_sum(const double* kernel, const double* newest, size_type K, double* acc) {
    float64x2_t lo = vdupq_n_f64(0.0), hi = vdupq_n_f64(0.0);
    for (size_type k = 1; k <= K; ++k) {
        const double* M = kernel + 16 * k;
        const double* h = newest - 4 * (k - 1);
        for (int c = 0; c < 4; ++c) {
            const float64x2_t x = vdupq_n_f64(h[c]);
            lo = vfmaq_f64(lo, vld1q_f64(M + 4 * c), x);
            hi = vfmaq_f64(hi, vld1q_f64(M + 4 * c + 2), x);
        }
    }
    vst1q_f64(acc, vaddq_f64(vld1q_f64(acc), lo));
    vst1q_f64(acc + 2, vaddq_f64(vld1q_f64(acc + 2), hi));
}

} // namespace qnoise::kernels::neon

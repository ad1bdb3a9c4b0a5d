#include <cmath>

#include "qnoise/kernels.hpp"

namespace qnoise::kernels::scalar {

void laplace_sum(const double* f, std::size_t n, double dt, double t0, double sigma, const double* omegas,
                 std::size_t m, std::complex<double>* out) {
    for (std::size_t j = 0; j < m; ++j) {
        const std::complex<double> s(sigma, omegas[j]);
        const std::complex<double> z = std::exp(-s * dt);
        double zr = z.real(), zi = z.imag();
        double pr = 0, pi = 0, ar = 0, ai = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k % phasor_restart == 0) {
                const std::complex<double> p = std::exp(-s * (t0 + static_cast<double>(k) * dt));
                pr = p.real();
                pi = p.imag();
            }
            const double w = (k == 0 || k + 1 == n) ? 0.5 * f[k] : f[k];
            ar += w * pr;
            ai += w * pi;
            const double nr = pr * zr - pi * zi;
            pi = pr * zi + pi * zr;
            pr = nr;
        }
        out[j] = {dt * ar, dt * ai};
    }
}

void memory_sum(const double* kernel, const double* newest, std::size_t K, double* acc) {
    double a0 = 0, a1 = 0, a2 = 0, a3 = 0;
    for (std::size_t k = 1; k <= K; ++k) {
        const double* M = kernel + 16 * k;
        const double* h = newest - 4 * (k - 1);
        for (int c = 0; c < 4; ++c) {
            const double x = h[c];
            a0 += M[4 * c + 0] * x;
            a1 += M[4 * c + 1] * x;
            a2 += M[4 * c + 2] * x;
            a3 += M[4 * c + 3] * x;
        }
    }
    acc[0] += a0;
    acc[1] += a1;
    acc[2] += a2;
    acc[3] += a3;
}

} // namespace qnoise::kernels::scalar

#include "qnoise/freq_model.hpp"

#include <cmath>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "qnoise/parallel.hpp"

namespace qnoise {

SystemSpec::SystemSpec(const Mat2c& h0, const Mat2c& h1, NoiseSpectra spectra, const BlochVector& init)
    : H0(h0), H1(h1), noise(std::move(spectra)), v0(init) {
    L0 = commutator_superop(H0);
    L1 = commutator_superop(H1);
    L1_plus = anticommutator_superop(H1);
    eig0 = decompose(L0);
    const double err = eig0.reconstruction_error(L0);
    if (err > 1e-12) throw ConvergenceError("system: L0 decomposition error " + std::to_string(err), {});
    if (!noise.laplace_gamma || !noise.laplace_omega) throw InvalidArgument("system: noise spectra not set");
}

double SystemSpec::frequency_scale() const {
    double m = 0.0;
    for (const cplx& x : eig0.eigenvalues) m = std::max(m, std::abs(x));
    return m > 0.0 ? m : 1.0;
}

Mat4c kernel_K(const SystemSpec& sys, cplx s) {
    const Mat4c g = matrix_s_function(sys.noise.laplace_gamma, sys.eig0, s);
    const Mat4c o = matrix_s_function(sys.noise.laplace_omega, sys.eig0, s);
    return g * sys.L1.matrix.cast<cplx>() + o * sys.L1_plus.matrix.cast<cplx>();
}

Mat4c system_matrix(const SystemSpec& sys, cplx s) {
    return s * Mat4c::Identity() - sys.L0.matrix.cast<cplx>() - sys.L1.matrix.cast<cplx>() * kernel_K(sys, s);
}

ResponsePoint solve_response(const SystemSpec& sys, cplx s) {
    const Mat4c A = system_matrix(sys, s);
    const Vec4c b = sys.v0.components().cast<cplx>();
    Eigen::JacobiSVD<Mat4c> svd(A);
    const auto& sv = svd.singularValues();
    const double cond = sv(3) > 0.0 ? sv(0) / sv(3) : std::numeric_limits<double>::infinity();
    if (!(cond <= 1e12))
        throw PoleError("response: system matrix is singular at s = (" + std::to_string(s.real()) + ", " +
                            std::to_string(s.imag()) + "), condition " + std::to_string(cond),
                        cond);
    ResponsePoint r;
    r.s = s;
    r.v = Eigen::FullPivLU<Mat4c>(A).solve(b);
    r.condition = cond;
    r.residual = (A * r.v - b).norm() / (sv(0) * r.v.norm() + b.norm());
    return r;
}

Vec4c bloch_response(const SystemSpec& sys, cplx s) { return solve_response(sys, s).v; }

Vec4c rate_response(const SystemSpec& sys, cplx s) {
    return s * bloch_response(sys, s) - sys.v0.components().cast<cplx>();
}

cplx z_rate(const SystemSpec& sys, cplx s) { return 0.5 * (s * bloch_response(sys, s)(3) - sys.v0[3]); }

cplx transition_rate(const SystemSpec& sys, cplx s) {
    const double v30 = sys.v0[3];
    return -v30 * (s * bloch_response(sys, s)(3) - v30);
}

FrequencyResponse evaluate_response(const SystemSpec& sys, const std::vector<cplx>& grid) {
    FrequencyResponse out;
    out.grid = grid;
    out.v_of_s.resize(grid.size());
    out.gamma_of_s.resize(grid.size());
    out.residuals.resize(grid.size());
    const Vec4c v0 = sys.v0.components().cast<cplx>();
    parallel_for(grid.size(), [&](std::size_t i) {
        const ResponsePoint r = solve_response(sys, grid[i]);
        out.v_of_s[i] = r.v;
        out.gamma_of_s[i] = grid[i] * r.v - v0;
        out.residuals[i] = r.residual;
    });
    return out;
}

LimitResult richardson_limit(const std::function<cplx(double)>& f, double scale, double rtol, double atol) {
    // ladder 1e-2, 1e-3, ... times scale; Richardson order 2 on the last four rungs,
    // extended by decades (down to 1e-12) while the last two estimates disagree
    LimitResult out;
    std::vector<cplx> F;
    auto order2 = [&](std::size_t k) {
        const cplx a = F[k - 2], b = F[k - 1], c = F[k];
        const cplx r1b = (10.0 * b - a) / 9.0, r1c = (10.0 * c - b) / 9.0;
        return (100.0 * r1c - r1b) / 99.0;
    };
    for (int e = 2; e <= 12; ++e) {
        F.push_back(f(scale * std::pow(10.0, -e)));
        out.iterates.push_back(F.back());
        if (F.size() < 4) continue;
        const cplx best = order2(F.size() - 1), prev = order2(F.size() - 2);
        out.iterates.push_back(best);
        if (std::abs(best - prev) <= rtol * std::abs(best) + atol) {
            out.value = best.real();
            return out;
        }
    }
    throw ConvergenceError("final value: Richardson extrapolation did not settle", out.iterates);
}

namespace {

cplx selected(const SystemSpec& sys, Selector which, double s) {
    switch (which.series) {
    case Series::bloch: return bloch_response(sys, s)(which.component);
    case Series::rate: return rate_response(sys, s)(which.component);
    case Series::z_rate: return z_rate(sys, s);
    case Series::transition_rate: return transition_rate(sys, s);
    }
    return 0.0;
}

} // namespace

double final_value(const SystemSpec& sys, Selector which) {
    if (which.component < 0 || which.component > 3) throw InvalidArgument("final_value: component must be 0..3");
    const double scale = sys.frequency_scale();
    return richardson_limit([&](double s) { return s * selected(sys, which, s); }, scale).value;
}

StationaryRates stationary_rates(const SystemSpec& sys) {
    const double scale = sys.frequency_scale();
    StationaryRates r;
    r.v3_inf = final_value(sys, {Series::bloch, 3});
    const double drop = sys.v0[3] - r.v3_inf;
    if (std::abs(drop) < 1e-12) return r;
    const double v3inf = r.v3_inf;
    const double d = richardson_limit([&](double s) { return bloch_response(sys, s)(3) - v3inf / s; }, scale,
                                      1e-6, 1e-12 * scale)
                         .value;
    r.relaxation_time = d / drop;
    if (!(r.relaxation_time > 0.0)) throw ConvergenceError("stationary_rates: non-positive relaxation time", {});
    const double b = 1.0 / r.relaxation_time;
    r.down = b * (1.0 + r.v3_inf);
    r.up = b * (1.0 - r.v3_inf);
    return r;
}

} // namespace qnoise

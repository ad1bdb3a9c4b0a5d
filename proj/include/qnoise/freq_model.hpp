// freq_model.hpp - Laplace-domain response of the Born master equation
//
//   K(s) = Gamma(sI - L0) L1 + Omega(sI - L0) L1+
//   (sI - L0 - L1 K(s)) v(s) = v0,   gamma(s) = s v(s) - v0

#pragma once

#include <functional>
#include <vector>

#include "qnoise/bloch.hpp"
#include "qnoise/noise.hpp"

namespace qnoise {

struct SystemSpec {
    Mat2c H0 = Mat2c::Zero();
    Mat2c H1 = Mat2c::Zero();
    Superoperator L0, L1, L1_plus;
    SuperopEigendecomposition eig0;
    NoiseSpectra noise;
    BlochVector v0;

    SystemSpec() = default;
    SystemSpec(const Mat2c& h0, const Mat2c& h1, NoiseSpectra spectra, const BlochVector& init);

    // Largest |eigenvalue| of L0, or 1 when L0 vanishes. Sets the s-scale for limits.
    double frequency_scale() const;
};

Mat4c kernel_K(const SystemSpec& sys, cplx s);
Mat4c system_matrix(const SystemSpec& sys, cplx s);

struct ResponsePoint {
    cplx s;
    Vec4c v;
    double residual = 0.0;  // ||A v - v0|| / (||A|| ||v|| + ||v0||)
    double condition = 0.0; // 2-norm condition number of A
};

// Throws PoleError when cond(A) > 1e12.
ResponsePoint solve_response(const SystemSpec& sys, cplx s);
Vec4c bloch_response(const SystemSpec& sys, cplx s);
Vec4c rate_response(const SystemSpec& sys, cplx s);
// gamma_3(s) = (s v3(s) - v3^0) / 2
cplx z_rate(const SystemSpec& sys, cplx s);
// -v3^0 (s v3(s) - v3^0): the rate whose optimal-point form is (G+ -/+ O-)/(G+ + s).
cplx transition_rate(const SystemSpec& sys, cplx s);

struct FrequencyResponse {
    std::vector<cplx> grid;
    std::vector<Vec4c> v_of_s;
    std::vector<Vec4c> gamma_of_s;
    std::vector<double> residuals;
};

FrequencyResponse evaluate_response(const SystemSpec& sys, const std::vector<cplx>& grid);

enum class Series { bloch, rate, z_rate, transition_rate };

struct Selector {
    Series series = Series::bloch;
    int component = 3; // ignored for z_rate / transition_rate
};

struct LimitResult {
    double value = 0.0;
    std::vector<cplx> iterates; // f(s_k) followed by the Richardson columns
};

// lim_{s->0+} f(s) from samples on s_k = {1e-2, 1e-3, 1e-4, 1e-5, ...} * scale, Richardson
// order 2 over the last four rungs. The ladder goes down by decades (to 1e-12) until two
// successive estimates agree; ConvergenceError with the iterates otherwise.
LimitResult richardson_limit(const std::function<cplx(double)>& f, double scale, double rtol = 1e-6,
                             double atol = 1e-12);

// lim_{s->0+} s * f(s) for the selected series.
double final_value(const SystemSpec& sys, Selector which);

// Markov-equivalent stationary rates from the relaxation of v3:
// v3_inf = lim s v3(s), tau = lim [v3(s) - v3_inf / s] / (v3^0 - v3_inf),
// down = (1 + v3_inf) / tau, up = (1 - v3_inf) / tau (transition-rate normalization).
struct StationaryRates {
    double up = 0.0;
    double down = 0.0;
    double v3_inf = 0.0;
    double relaxation_time = 0.0;
};

StationaryRates stationary_rates(const SystemSpec& sys);

} // namespace qnoise

// identification.hpp - from measured traces to noise spectra
#pragma once

#include <limits>
#include <string>
#include <vector>

#include "qnoise/qubit.hpp"

namespace qnoise {

enum class Scenario { coherent_oscillation, relaxation_up, relaxation_down };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& name);

struct MeasurementTrace {
    std::vector<double> times; // ps, uniform
    std::vector<double> values;
    double dt = 0.0;
    double T = 0.0;
    Scenario meta = Scenario::coherent_oscillation;

    // Checks uniform sampling (1e-9 dt) and >= 16 samples; fills dt and T.
    static MeasurementTrace from_samples(std::vector<double> times, std::vector<double> values, Scenario meta);
    static MeasurementTrace uniform(std::vector<double> values, double dt, Scenario meta, double t0 = 0.0);
};

enum class Detrend { theoretical, empirical_mean };

// Q_AC = Q - 0.5 (theoretical) or Q - mean(Q).
MeasurementTrace detrend(const MeasurementTrace& trace, Detrend mode = Detrend::theoretical);

// w_j = 2 pi j / T, j = 1 .. floor(T / (2 dt)), optionally restricted to [w_lo, w_hi].
std::vector<double> frequency_grid(const MeasurementTrace& trace, double w_lo = 0.0,
                                   double w_hi = std::numeric_limits<double>::infinity());

struct DiscreteLaplace {
    std::vector<double> omegas;
    std::vector<cplx> values;
    double damping = 0.0;
    double truncation_residual = 0.0; // |f(T)| / max |f|
    std::vector<std::string> warnings;

    cplx s(std::size_t j) const { return {damping, omegas[j]}; }
};

// Trapezoid quadrature of int_0^T e^{-(sigma + i w) t} f(t) dt.
DiscreteLaplace discrete_laplace(const MeasurementTrace& trace, const std::vector<double>& omegas, double sigma = 0.0);
// Adds level / s at every bin (a DC level handled analytically).
DiscreteLaplace add_dc(const DiscreteLaplace& dl, double level);

struct DeltaEstimate {
    double delta = 0.0;
    double bin_width = 0.0;
    std::size_t peak_bin = 0;
};

// Peak of |Q_AC(iw)| refined by a parabola through the log-magnitudes of the
// three bins around it. DetectionError when there is no significant interior peak.
DeltaEstimate detect_delta(const DiscreteLaplace& dl, double record_length);

enum class Method { eq19_complex, eq20_ft, eq21_ac_paper, ac_exact_derived, relaxation_pair, golden_rule_sweep };

std::string to_string(Method m);

struct SpectrumEstimate {
    std::vector<double> omegas;
    std::vector<double> gamma_ft;
    std::vector<cplx> gamma_complex; // eq19 and ac-exact only
    std::vector<bool> masked;
    std::vector<double> denominator_abs;
    std::vector<double> bias_estimate; // only when the transform was damped
    Method method = Method::eq19_complex;

    std::size_t masked_count() const;
};

// Gamma(s) = Delta^2 / (2 s^2 Q) - (s^2 + w0^2) / s, i.e. at s = iw
// Gamma(iw) = -Delta^2 / (2 w^2 Q) - i (w - w0^2 / w). dl must hold the full Q (DC included).
SpectrumEstimate identify_gamma_complex(const DiscreteLaplace& dl, const ChargeQubitParams& p,
                                        double mask_threshold = 1e-12);

enum class AcVariant { paper_eq21, exact };

// exact: Gamma(s) = -s - 2 Delta^2 q / (1 + 2 s q) with q = Q_AC, so at s = iw
//   Gamma_FT = -Delta^2 Re[1 / (w^2 q - i w / 2)]
// eq21: Gamma_FT = -w0^2 Re[2 q / (0.5 + i w q)]
SpectrumEstimate identify_gamma_ft_ac(const DiscreteLaplace& dl, const ChargeQubitParams& p, AcVariant variant,
                                      double mask_threshold = 1e-12);

struct SampledTransform {
    std::vector<cplx> s;
    std::vector<cplx> values;

    static SampledTransform from(const DiscreteLaplace& dl);
};

struct RelaxationEstimate {
    std::vector<cplx> s;
    std::vector<cplx> gamma_plus;
    std::vector<cplx> omega_minus;
    std::vector<bool> masked_plus;
    std::vector<bool> masked_minus;
};

enum class RelaxationVariant { exact, printed };

// G+(s) = s [up + down] / (2 - [up + down]),  O-(s) = s [up - down] / (2 - [up + down]).
// printed: O-(s) = s [up - down] / (2 - [up - down]), kept for comparison; it is not the inverse when O- != 0.
RelaxationEstimate identify_from_relaxation(const SampledTransform& up, const SampledTransform& down,
                                            double mask_threshold = 1e-12,
                                            RelaxationVariant variant = RelaxationVariant::exact);

struct GoldenRuleMeasurement {
    double theta = 0.0;
    double rate_up = 0.0;
    double rate_down = 0.0;
};

struct SpectrumSample {
    double omega = 0.0; // +Delta for the down rate, -Delta for the up rate
    double phi_ft = 0.0;
    double theta = 0.0;
};

// Phi_FT(+-Delta) = rate / sin^2 theta with Delta = EJ / sin theta.
std::vector<SpectrumSample> golden_rule_sweep(const std::vector<GoldenRuleMeasurement>& measurements, double EJ);

} // namespace qnoise

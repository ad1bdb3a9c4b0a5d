#include "qnoise/identification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qnoise/kernels.hpp"

namespace qnoise {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
const double nan = std::numeric_limits<double>::quiet_NaN();
} // namespace

std::string to_string(Scenario s) {
    switch (s) {
    case Scenario::coherent_oscillation: return "coherent_oscillation";
    case Scenario::relaxation_up: return "relaxation_up";
    case Scenario::relaxation_down: return "relaxation_down";
    }
    return "unknown";
}

Scenario scenario_from_string(const std::string& name) {
    if (name == "coherent_oscillation") return Scenario::coherent_oscillation;
    if (name == "relaxation_up") return Scenario::relaxation_up;
    if (name == "relaxation_down") return Scenario::relaxation_down;
    throw InvalidArgument("unknown scenario '" + name + "'");
}

std::string to_string(Method m) {
    switch (m) {
    case Method::eq19_complex: return "eq19_complex";
    case Method::eq20_ft: return "eq20_ft";
    case Method::eq21_ac_paper: return "eq21_ac_paper";
    case Method::ac_exact_derived: return "ac_exact_derived";
    case Method::relaxation_pair: return "relaxation_pair";
    case Method::golden_rule_sweep: return "golden_rule_sweep";
    }
    return "unknown";
}

MeasurementTrace MeasurementTrace::from_samples(std::vector<double> times, std::vector<double> values, Scenario meta) {
    if (times.size() != values.size()) throw InvalidArgument("trace: times and values differ in length");
    if (times.size() < 16) throw InvalidArgument("trace: need at least 16 samples, got " + std::to_string(times.size()));
    const double dt = times[1] - times[0];
    if (!(dt > 0.0)) throw InvalidArgument("trace: times must increase");
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (std::abs(times[k] - times[k - 1] - dt) > 1e-9 * dt)
            throw InvalidArgument("trace: sampling is not uniform at sample " + std::to_string(k));
    }
    for (double v : values)
        if (!std::isfinite(v)) throw InvalidArgument("trace: non-finite value");
    MeasurementTrace t;
    t.dt = dt;
    t.T = times.back() - times.front();
    t.times = std::move(times);
    t.values = std::move(values);
    t.meta = meta;
    return t;
}

MeasurementTrace MeasurementTrace::uniform(std::vector<double> values, double dt, Scenario meta, double t0) {
    std::vector<double> times(values.size());
    for (std::size_t k = 0; k < times.size(); ++k) times[k] = t0 + dt * static_cast<double>(k);
    return from_samples(std::move(times), std::move(values), meta);
}

MeasurementTrace detrend(const MeasurementTrace& trace, Detrend mode) {
    double level = 0.5;
    if (mode == Detrend::empirical_mean) {
        level = 0.0;
        for (double v : trace.values) level += v;
        level /= static_cast<double>(trace.values.size());
    }
    MeasurementTrace out = trace;
    for (double& v : out.values) v -= level;
    return out;
}

std::vector<double> frequency_grid(const MeasurementTrace& trace, double w_lo, double w_hi) {
    std::vector<double> w;
    const auto jmax = static_cast<std::size_t>(std::floor(trace.T / (2.0 * trace.dt) + 1e-9));
    for (std::size_t j = 1; j <= jmax; ++j) {
        const double om = two_pi * static_cast<double>(j) / trace.T;
        if (om >= w_lo && om <= w_hi) w.push_back(om);
    }
    return w;
}

DiscreteLaplace discrete_laplace(const MeasurementTrace& trace, const std::vector<double>& omegas, double sigma) {
    if (!(sigma >= 0.0)) throw InvalidArgument("discrete_laplace: damping must be >= 0");
    const double nyquist = std::numbers::pi / trace.dt;
    for (double w : omegas)
        if (std::abs(w) > nyquist * (1.0 + 1e-12))
            throw InvalidArgument("discrete_laplace: w = " + std::to_string(w) + " rad/ps is beyond Nyquist " +
                                  std::to_string(nyquist));
    DiscreteLaplace dl;
    dl.omegas = omegas;
    dl.damping = sigma;
    dl.values.resize(omegas.size());
    kernels::laplace_sum(trace.values.data(), trace.values.size(), trace.dt, trace.times.front(), sigma, omegas.data(),
                         omegas.size(), dl.values.data());
    double peak = 0.0;
    for (double v : trace.values) peak = std::max(peak, std::abs(v));
    dl.truncation_residual = peak > 0.0 ? std::abs(trace.values.back()) / peak : 0.0;
    if (dl.truncation_residual > 0.05)
        dl.warnings.push_back("truncation residual " + std::to_string(dl.truncation_residual) +
                              " exceeds 0.05: the record has not decayed");
    return dl;
}

DiscreteLaplace add_dc(const DiscreteLaplace& dl, double level) {
    DiscreteLaplace out = dl;
    for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] += level / dl.s(j);
    return out;
}

DeltaEstimate detect_delta(const DiscreteLaplace& dl, double record_length) {
    const std::size_t n = dl.values.size();
    if (n < 3) throw DetectionError("detect_delta: need at least 3 frequency bins");
    std::vector<double> mag(n);
    for (std::size_t j = 0; j < n; ++j) mag[j] = std::abs(dl.values[j]);
    const std::size_t k = static_cast<std::size_t>(std::max_element(mag.begin(), mag.end()) - mag.begin());
    std::vector<double> sorted = mag;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(n / 2), sorted.end());
    const double median = sorted[n / 2];
    if (k == 0 || k + 1 == n) throw DetectionError("detect_delta: maximum sits at the edge of the grid");
    if (!(mag[k] > 10.0 * median)) throw DetectionError("detect_delta: no significant interior maximum");
    const double ym = std::log(mag[k - 1]), y0 = std::log(mag[k]), yp = std::log(mag[k + 1]);
    const double curv = ym - 2.0 * y0 + yp;
    double offset = curv < 0.0 ? 0.5 * (ym - yp) / curv : 0.0;
    offset = std::clamp(offset, -0.5, 0.5);
    const double step = offset >= 0 ? dl.omegas[k + 1] - dl.omegas[k] : dl.omegas[k] - dl.omegas[k - 1];
    return {dl.omegas[k] + offset * step, two_pi / record_length, k};
}

std::size_t SpectrumEstimate::masked_count() const {
    return static_cast<std::size_t>(std::count(masked.begin(), masked.end(), true));
}

namespace {

void require_optimal(const ChargeQubitParams& p, const char* who) {
    if (!p.at_optimal_point(1e-9)) throw InvalidArgument(std::string(who) + ": needs theta = pi/2 data");
}

void attach_bias(SpectrumEstimate& est, double sigma) {
    if (sigma == 0.0) return;
    const std::size_t n = est.omegas.size();
    est.bias_estimate.assign(n, nan);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        if (est.masked[j - 1] || est.masked[j + 1]) continue;
        const cplx d = (est.gamma_complex[j + 1] - est.gamma_complex[j - 1]) / (est.omegas[j + 1] - est.omegas[j - 1]);
        est.bias_estimate[j] = 2.0 * sigma * d.imag();
    }
}

void reserve(SpectrumEstimate& est, const DiscreteLaplace& dl, Method m) {
    est.method = m;
    est.omegas = dl.omegas;
    const std::size_t n = dl.omegas.size();
    est.gamma_ft.assign(n, nan);
    est.masked.assign(n, false);
    est.denominator_abs.assign(n, 0.0);
}

} // namespace

SpectrumEstimate identify_gamma_complex(const DiscreteLaplace& dl, const ChargeQubitParams& p, double mask_threshold) {
    require_optimal(p, "identify_gamma_complex");
    SpectrumEstimate est;
    reserve(est, dl, Method::eq19_complex);
    est.gamma_complex.assign(dl.omegas.size(), cplx(nan, nan));
    const double D2 = p.delta * p.delta, w02 = p.omega0 * p.omega0;
    for (std::size_t j = 0; j < dl.omegas.size(); ++j) {
        const cplx s = dl.s(j);
        if (s == cplx(0.0, 0.0)) throw InvalidArgument("identify_gamma_complex: the grid must skip w = 0");
        const cplx Q = dl.values[j];
        const cplx den = 2.0 * s * s * Q;
        est.denominator_abs[j] = std::abs(den);
        if (!(est.denominator_abs[j] > mask_threshold)) {
            est.masked[j] = true;
            continue;
        }
        const cplx G = D2 / den - (s * s + w02) / s;
        est.gamma_complex[j] = G;
        est.gamma_ft[j] = 2.0 * G.real();
    }
    attach_bias(est, dl.damping);
    return est;
}

SpectrumEstimate identify_gamma_ft_ac(const DiscreteLaplace& dl, const ChargeQubitParams& p, AcVariant variant,
                                      double mask_threshold) {
    require_optimal(p, "identify_gamma_ft_ac");
    SpectrumEstimate est;
    reserve(est, dl, variant == AcVariant::exact ? Method::ac_exact_derived : Method::eq21_ac_paper);
    const double D2 = p.delta * p.delta, w02 = p.omega0 * p.omega0;
    if (variant == AcVariant::exact) est.gamma_complex.assign(dl.omegas.size(), cplx(nan, nan));
    for (std::size_t j = 0; j < dl.omegas.size(); ++j) {
        const cplx s = dl.s(j);
        const double w = dl.omegas[j];
        const cplx q = dl.values[j];
        if (variant == AcVariant::exact) {
            // s (1 + 2 s q) / 2 equals w^2 q - i w / 2 at s = i w
            const cplx den = 0.5 * s * (1.0 + 2.0 * s * q);
            est.denominator_abs[j] = std::abs(den);
            if (!(est.denominator_abs[j] > mask_threshold)) {
                est.masked[j] = true;
                continue;
            }
            const cplx G = -s - 2.0 * D2 * q / (1.0 + 2.0 * s * q);
            est.gamma_complex[j] = G;
            est.gamma_ft[j] = dl.damping == 0.0 ? -D2 * (1.0 / (w * w * q - cplx(0.0, 0.5 * w))).real() : 2.0 * G.real();
        } else {
            const cplx den = 0.5 + cplx(0.0, w) * q;
            est.denominator_abs[j] = std::abs(den);
            if (!(est.denominator_abs[j] > mask_threshold)) {
                est.masked[j] = true;
                continue;
            }
            est.gamma_ft[j] = -w02 * (2.0 * q / den).real();
        }
    }
    if (variant == AcVariant::exact) attach_bias(est, dl.damping);
    return est;
}

SampledTransform SampledTransform::from(const DiscreteLaplace& dl) {
    SampledTransform t;
    for (std::size_t j = 0; j < dl.omegas.size(); ++j) t.s.push_back(dl.s(j));
    t.values = dl.values;
    return t;
}

RelaxationEstimate identify_from_relaxation(const SampledTransform& up, const SampledTransform& down,
                                            double mask_threshold, RelaxationVariant variant) {
    if (up.s.size() != down.s.size() || up.values.size() != up.s.size() || down.values.size() != down.s.size())
        throw InvalidArgument("identify_from_relaxation: grids differ in length");
    for (std::size_t j = 0; j < up.s.size(); ++j)
        if (std::abs(up.s[j] - down.s[j]) > 1e-12 * std::max(1.0, std::abs(up.s[j])))
            throw InvalidArgument("identify_from_relaxation: grids differ at bin " + std::to_string(j));
    RelaxationEstimate r;
    r.s = up.s;
    const std::size_t n = up.s.size();
    r.gamma_plus.assign(n, cplx(nan, nan));
    r.omega_minus.assign(n, cplx(nan, nan));
    r.masked_plus.assign(n, false);
    r.masked_minus.assign(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        const cplx s = up.s[j];
        const cplx sum = up.values[j] + down.values[j];
        const cplx diff = up.values[j] - down.values[j];
        if (std::abs(2.0 - sum) > mask_threshold)
            r.gamma_plus[j] = s * sum / (2.0 - sum);
        else
            r.masked_plus[j] = true;
        const cplx den = variant == RelaxationVariant::exact ? 2.0 - sum : 2.0 - diff;
        if (std::abs(den) > mask_threshold)
            r.omega_minus[j] = s * diff / den;
        else
            r.masked_minus[j] = true;
    }
    return r;
}

std::vector<SpectrumSample> golden_rule_sweep(const std::vector<GoldenRuleMeasurement>& measurements, double EJ) {
    if (!(EJ > 0.0)) throw InvalidArgument("golden_rule_sweep: EJ must be > 0");
    std::vector<SpectrumSample> out;
    for (const auto& m : measurements) {
        if (!(m.theta > 0.0 && m.theta < std::numbers::pi))
            throw InvalidArgument("golden_rule_sweep: theta must lie in (0, pi)");
        if (!(m.rate_up >= 0.0 && m.rate_down >= 0.0)) throw InvalidArgument("golden_rule_sweep: rates must be >= 0");
        const double sn = std::sin(m.theta);
        const double delta = EJ / sn;
        out.push_back({delta, m.rate_down / (sn * sn), m.theta});
        out.push_back({-delta, m.rate_up / (sn * sn), m.theta});
    }
    return out;
}

} // namespace qnoise

// time_sim.hpp - time-domain integration of the memory-kernel master equation
//
//   dv/dt = L0 v + int_0^t M(tau) v(t - tau) dtau,
//   M(tau) = L1 [Gamma(tau) e^{tau L0} L1 + Omega(tau) e^{tau L0} L1+]
//
// plus a Monte Carlo reference for classical Ornstein-Uhlenbeck noise.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qnoise/freq_model.hpp"

namespace qnoise {

enum class Scheme { trapezoid_volterra, predictor_corrector };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);

struct SimConfig {
    double dt = 0.0; // ps
    double T = 0.0;  // ps
    // Lags beyond this are dropped. Unset: |Gamma| + |Omega| < 1e-8 (Gamma(0) + |Omega|max).
    std::optional<double> kernel_cut;
    Scheme scheme = Scheme::trapezoid_volterra;
    int output_stride = 1; // keep every n-th step

    // Basic checks: dt > 0, T >= dt, kernel_cut >= 0, stride >= 1.
    void validate() const;
    // Resolution checks against the oscillation (dt <= 2 pi / (20 Delta)) and the
    // noise correlation time (dt <= tau / 10).
    void validate_for(double delta, double correlation_time) const;
    std::size_t steps() const;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Vec4> states;
    std::vector<double> q; // (1 - v3) / 2
};

struct EnsembleResult {
    Trajectory mean;
    std::vector<double> stderr_q;
    std::size_t n_traj = 0;
    std::uint64_t seed = 0;
};

// Kernel matrices M_k = M(k dt) for k = 0..K, column-major, 16 doubles each.
std::vector<double> kernel_table(const SystemSpec& sys, const NoiseModel& noise, double dt, std::size_t K);
double default_kernel_cut(const NoiseModel& noise);

Trajectory integrate_volterra(const SystemSpec& sys, const NoiseModel& noise, const SimConfig& cfg);

struct OuProcess {
    double g2 = 0.0;   // variance
    double tau_c = 1.0; // correlation time
};

// v' = (L0 + c(t) L1) v per trajectory, c an OU process; Omega == 0 by construction.
EnsembleResult monte_carlo_reference(const Mat2c& H0, const Mat2c& H1, const BlochVector& v0, const OuProcess& process,
                                     std::size_t n_traj, const SimConfig& cfg, std::uint64_t seed);

// (1/2) dv3/dt by centered differences, second-order one-sided at the ends.
std::vector<double> transition_rate_trace(const Trajectory& traj);

// Counter-based generator: stream (seed, index) is independent of how trajectories are scheduled.
class SplitMix64 {
public:
    using result_type = std::uint64_t;
    SplitMix64(std::uint64_t seed, std::uint64_t stream);
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type(0); }
    result_type operator()();

private:
    std::uint64_t state_;
};

} // namespace qnoise

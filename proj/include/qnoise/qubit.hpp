// qubit.hpp - charge qubit geometry, frames and closed-form responses
//
// Energies are angular frequencies in rad/ps (hbar = 1). With the gap Delta and
// bias angle theta, sigma_theta = cos(theta) sz + sin(theta) sx and
//   charge frame: H0 = (Delta/2) sigma_theta, H1 = sz / 2
//   eigen frame:  H0 = (Delta/2) sz,          H1 = sigma_theta / 2
// so the free coherence oscillates at exactly Delta.

#pragma once

#include <utility>

#include "qnoise/freq_model.hpp"

namespace qnoise {

struct ChargeQubitParams {
    double EJ = 1.0;
    double EC = 0.0;  // only set when built from a gate charge
    double n_g = 0.5; // only meaningful with EC
    double E_el = 0.0;
    double delta = 1.0;
    double theta = 1.5707963267948966;
    double omega0 = 1.0;

    bool at_optimal_point(double tol = 1e-12) const;
};

ChargeQubitParams params_from_bias(double EJ, double E_el);
ChargeQubitParams params_from_gate(double EJ, double EC, double n_g);
// Convenience for tests: gap and angle directly (EJ = Delta sin(theta)).
ChargeQubitParams params_from_gap(double delta, double theta);

enum class Frame { charge_basis, eigen_basis };
enum class InitialState { zero_charge, excited, ground };

Mat2c sigma_theta(double theta);

struct QubitFrame {
    Frame frame = Frame::charge_basis;
    Mat2c H0 = Mat2c::Zero();
    Mat2c H1 = Mat2c::Zero();
    SuperopEigendecomposition eig; // explicit P for the frame generator
    BlochVector v0;
};

// zero_charge is [1,0,0,1] in the charge frame; excited [1,0,0,-1] and ground
// [1,0,0,1] refer to the eigen frame. Other pairings are rejected.
QubitFrame make_frame(const ChargeQubitParams& p, Frame frame, InitialState init);
SystemSpec make_system(const ChargeQubitParams& p, Frame frame, InitialState init, NoiseSpectra spectra);

// Explicit decompositions of the frame generators (columns = eigenvectors for {0, 0, i Delta, -i Delta}).
SuperopEigendecomposition p_theta_decomposition(double delta, double theta);
SuperopEigendecomposition eigen_frame_decomposition(double delta);

// Q_theta(s) in the charge frame, Q = (1/s - v3(s)) / 2.
cplx closed_form_Q_theta(const ChargeQubitParams& p, const NoiseSpectra& spectra, cplx s);
cplx generic_Q_theta(const ChargeQubitParams& p, const NoiseSpectra& spectra, cplx s);

// Relaxation-rate transforms. At the optimal point the closed form
// (G+ -/+ O-)/(G+ + s) is used; elsewhere the generic eigen-frame evaluation.
cplx closed_form_rate_down(const ChargeQubitParams& p, const NoiseSpectra& spectra, cplx s);
cplx closed_form_rate_up(const ChargeQubitParams& p, const NoiseSpectra& spectra, cplx s);
cplx generic_rate_down(const ChargeQubitParams& p, const NoiseSpectra& spectra, cplx s);
cplx generic_rate_up(const ChargeQubitParams& p, const NoiseSpectra& spectra, cplx s);

struct RatePair {
    cplx up;
    cplx down;
};

// (sin^2 theta / s) [G+(s) +/- O-(s)]
RatePair lowest_order_rates(const ChargeQubitParams& p, const NoiseSpectra& spectra, cplx s);

struct GoldenRule {
    double up = 0.0;
    double down = 0.0;
};

GoldenRule golden_rule_rates(const ChargeQubitParams& p, const NoiseModel& model);

// Delta^2 / (2 s [s^2 + s Gamma(s) + Delta^2]); theta must be pi/2.
cplx optimal_point_Q(const ChargeQubitParams& p, const NoiseSpectra& spectra, cplx s);
// Q(s) - 1/(2s) = -(s + Gamma(s)) / (2 [s^2 + s Gamma(s) + Delta^2])
cplx optimal_point_Q_ac(const ChargeQubitParams& p, const NoiseSpectra& spectra, cplx s);

} // namespace qnoise

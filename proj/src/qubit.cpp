#include "qnoise/qubit.hpp"

#include <cmath>
#include <numbers>

namespace qnoise {

namespace {

constexpr double half_pi = std::numbers::pi / 2.0;

void check_finite(cplx v, cplx s, const char* who) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw SingularEvaluation(std::string(who) + ": pole at s", s);
}

cplx checked_div(cplx num, cplx den, cplx s, const char* who) {
    if (den == cplx(0.0, 0.0)) throw SingularEvaluation(std::string(who) + ": pole at s", s);
    const cplx v = num / den;
    check_finite(v, s, who);
    return v;
}

} // namespace

bool ChargeQubitParams::at_optimal_point(double tol) const { return std::abs(theta - half_pi) <= tol; }

ChargeQubitParams params_from_bias(double EJ, double E_el) {
    if (!(EJ > 0.0) || !std::isfinite(EJ)) throw InvalidArgument("qubit: EJ must be > 0");
    if (!std::isfinite(E_el)) throw InvalidArgument("qubit: E_el must be finite");
    ChargeQubitParams p;
    p.EJ = EJ;
    p.E_el = E_el;
    p.delta = std::hypot(EJ, E_el);
    p.theta = std::atan2(EJ, E_el);
    p.omega0 = EJ;
    return p;
}

ChargeQubitParams params_from_gate(double EJ, double EC, double n_g) {
    ChargeQubitParams p = params_from_bias(EJ, EC * (1.0 - 2.0 * n_g));
    p.EC = EC;
    p.n_g = n_g;
    return p;
}

ChargeQubitParams params_from_gap(double delta, double theta) {
    if (!(delta > 0.0)) throw InvalidArgument("qubit: gap must be > 0");
    if (!(theta > 0.0 && theta <= std::numbers::pi)) throw InvalidArgument("qubit: theta must lie in (0, pi]");
    ChargeQubitParams p;
    p.EJ = delta * std::sin(theta);
    p.E_el = delta * std::cos(theta);
    p.delta = delta;
    p.theta = theta;
    p.omega0 = p.EJ;
    return p;
}

Mat2c sigma_theta(double theta) { return std::cos(theta) * pauli::z() + std::sin(theta) * pauli::x(); }

SuperopEigendecomposition p_theta_decomposition(double delta, double theta) {
    const double c = std::cos(theta), sn = std::sin(theta), r = 1.0 / std::sqrt(2.0);
    const cplx i(0.0, 1.0);
    SuperopEigendecomposition e;
    e.P << 1, 0, 0, 0,
           0, sn, -c * r, -c * r,
           0, 0, i * r, -i * r,
           0, c, sn * r, sn * r;
    e.P_inv = e.P.adjoint();
    e.eigenvalues = {0.0, 0.0, cplx(0.0, delta), cplx(0.0, -delta)};
    return e;
}

SuperopEigendecomposition eigen_frame_decomposition(double delta) {
    const double r = 1.0 / std::sqrt(2.0);
    const cplx i(0.0, 1.0);
    SuperopEigendecomposition e;
    e.P << 1, 0, 0, 0,
           0, 0, r, r,
           0, 0, -i * r, i * r,
           0, 1, 0, 0;
    e.P_inv = e.P.adjoint();
    e.eigenvalues = {0.0, 0.0, cplx(0.0, delta), cplx(0.0, -delta)};
    return e;
}

QubitFrame make_frame(const ChargeQubitParams& p, Frame frame, InitialState init) {
    QubitFrame f;
    f.frame = frame;
    if (frame == Frame::charge_basis) {
        if (init != InitialState::zero_charge) throw InvalidArgument("qubit: charge frame starts from the zero-charge state");
        f.H0 = 0.5 * p.delta * sigma_theta(p.theta);
        f.H1 = 0.5 * pauli::z();
        f.eig = p_theta_decomposition(p.delta, p.theta);
        f.v0 = BlochVector::zero_charge();
    } else {
        if (init == InitialState::zero_charge) throw InvalidArgument("qubit: eigen frame starts from the excited or ground state");
        f.H0 = 0.5 * p.delta * pauli::z();
        f.H1 = 0.5 * sigma_theta(p.theta);
        f.eig = eigen_frame_decomposition(p.delta);
        f.v0 = init == InitialState::excited ? BlochVector(0.0, 0.0, -1.0) : BlochVector(0.0, 0.0, 1.0);
    }
    return f;
}

SystemSpec make_system(const ChargeQubitParams& p, Frame frame, InitialState init, NoiseSpectra spectra) {
    const QubitFrame f = make_frame(p, frame, init);
    SystemSpec sys(f.H0, f.H1, std::move(spectra), f.v0);
    const double err = f.eig.reconstruction_error(sys.L0);
    if (err > 1e-12) throw ConvergenceError("qubit: explicit frame decomposition error " + std::to_string(err), {});
    sys.eig0 = f.eig;
    return sys;
}

cplx closed_form_Q_theta(const ChargeQubitParams& p, const NoiseSpectra& spectra, cplx s) {
    if (s == cplx(0.0, 0.0)) throw SingularEvaluation("Q_theta: s = 0", s);
    const double D = p.delta, c = std::cos(p.theta), sn = std::sin(p.theta);
    const ModulatedSpectra m = modulated_at(spectra, D, s);
    const cplx G = spectra.laplace_gamma(s), O = spectra.laplace_omega(s);
    const cplx sg = s + m.gamma_plus;
    const cplx N0 = sg * (m.omega_plus - O) + (D + m.gamma_minus) * m.omega_minus;
    const cplx N1 = D * sg;
    const cplx D0 = s * (sg * sg + (D + m.gamma_minus) * (D + m.gamma_minus));
    const cplx D1 = sg * (s * s + s * G + D * D);
    // numerator and denominator multiplied through by sin^2(theta)
    const cplx num = (N0 * c + N1) * (sn * sn);
    const cplx den = D0 * (c * c) + D1 * (sn * sn);
    return D / (2.0 * s) * checked_div(num, den, s, "Q_theta");
}

cplx generic_Q_theta(const ChargeQubitParams& p, const NoiseSpectra& spectra, cplx s) {
    const SystemSpec sys = make_system(p, Frame::charge_basis, InitialState::zero_charge, spectra);
    return 0.5 * (1.0 / s - bloch_response(sys, s)(3));
}

namespace {

cplx eq14(const ChargeQubitParams& p, const NoiseSpectra& spectra, cplx s, double omega_sign) {
    const ModulatedSpectra m = modulated_at(spectra, p.delta, s);
    return checked_div(m.gamma_plus + omega_sign * m.omega_minus, m.gamma_plus + s, s, "relaxation rate");
}

} // namespace

cplx generic_rate_down(const ChargeQubitParams& p, const NoiseSpectra& spectra, cplx s) {
    return transition_rate(make_system(p, Frame::eigen_basis, InitialState::excited, spectra), s);
}

cplx generic_rate_up(const ChargeQubitParams& p, const NoiseSpectra& spectra, cplx s) {
    return transition_rate(make_system(p, Frame::eigen_basis, InitialState::ground, spectra), s);
}

cplx closed_form_rate_down(const ChargeQubitParams& p, const NoiseSpectra& spectra, cplx s) {
    if (p.at_optimal_point()) return eq14(p, spectra, s, -1.0);
    return generic_rate_down(p, spectra, s);
}

cplx closed_form_rate_up(const ChargeQubitParams& p, const NoiseSpectra& spectra, cplx s) {
    if (p.at_optimal_point()) return eq14(p, spectra, s, +1.0);
    return generic_rate_up(p, spectra, s);
}

RatePair lowest_order_rates(const ChargeQubitParams& p, const NoiseSpectra& spectra, cplx s) {
    if (s == cplx(0.0, 0.0)) throw InvalidArgument("lowest_order_rates: s must be nonzero");
    const ModulatedSpectra m = modulated_at(spectra, p.delta, s);
    const double s2 = std::sin(p.theta) * std::sin(p.theta);
    return {s2 / s * (m.gamma_plus + m.omega_minus), s2 / s * (m.gamma_plus - m.omega_minus)};
}

GoldenRule golden_rule_rates(const ChargeQubitParams& p, const NoiseModel& model) {
    const double s2 = std::sin(p.theta) * std::sin(p.theta);
    return {model.phi_ft(-p.delta) * s2, model.phi_ft(p.delta) * s2};
}

cplx optimal_point_Q(const ChargeQubitParams& p, const NoiseSpectra& spectra, cplx s) {
    if (!p.at_optimal_point()) throw InvalidArgument("optimal_point_Q: theta must be pi/2");
    if (s == cplx(0.0, 0.0)) throw InvalidArgument("optimal_point_Q: s must be nonzero");
    const double D = p.delta;
    const cplx G = spectra.laplace_gamma(s);
    return checked_div(D * D, 2.0 * s * (s * s + s * G + D * D), s, "optimal_point_Q");
}

cplx optimal_point_Q_ac(const ChargeQubitParams& p, const NoiseSpectra& spectra, cplx s) {
    if (!p.at_optimal_point()) throw InvalidArgument("optimal_point_Q_ac: theta must be pi/2");
    const double D = p.delta;
    const cplx G = spectra.laplace_gamma(s);
    return checked_div(-(s + G), 2.0 * (s * s + s * G + D * D), s, "optimal_point_Q_ac");
}

} // namespace qnoise

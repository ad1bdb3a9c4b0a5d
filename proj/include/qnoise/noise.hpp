// noise.hpp - stationary noise correlation models Phi(t) = Gamma(t) + i Omega(t)
//
// Gamma is even and Omega odd in t. Transforms are one-sided Laplace transforms
// on Re s >= sigma_min; Fourier spectra are two-sided,
//   Gamma_FT(w) = 2 Re Gamma(iw),  Omega_FT(w) = 2i Im Omega(iw)
// with Omega_FT reported through its imaginary coefficient. Times in ps,
// rates and frequencies in rad/ps.

#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace qnoise {

using cplx = std::complex<double>;

enum class NoiseKind { lorentzian, white, lorentzian_sum, ohmic, tabulated };

std::string to_string(NoiseKind kind);
NoiseKind noise_kind_from_string(const std::string& name);

struct LorentzianTerm {
    double g2 = 0.0;
    double tau_c = 1.0;
};

// Omega(t) = -a e^{-|t|/tau_c} sign(t) (1 - e^{-|t|/tau_r})
struct DampedSineOmega {
    double a = 0.0;
    double tau_c = 1.0;
    double tau_r = 1.0;
};

struct Correlation {
    double gamma = 0.0;
    double omega = 0.0;
};

struct LaplacePair {
    cplx gamma;
    cplx omega;
};

struct FourierPair {
    double gamma_ft = 0.0;
    double omega_ft = 0.0; // imaginary coefficient
};

// Transform pair as plain callables, so evaluators can also be built from
// closed-form expressions without a NoiseModel.
struct NoiseSpectra {
    std::function<cplx(cplx)> laplace_gamma;
    std::function<cplx(cplx)> laplace_omega;
    double sigma_min = -std::numeric_limits<double>::infinity();

    static NoiseSpectra zero();
};

struct ModulatedSpectra {
    cplx gamma_plus;
    cplx gamma_minus;
    cplx omega_plus;
    cplx omega_minus;
};

class NoiseModel {
public:
    static NoiseModel lorentzian(double g2, double tau_c);
    static NoiseModel white(double gamma_w);
    static NoiseModel lorentzian_sum(std::vector<LorentzianTerm> terms);
    // 1/f-like: Gamma_FT(w) ~ amplitude / w on [w_lo, w_hi], per_decade corners per decade.
    static NoiseModel one_over_f(double amplitude, double w_lo, double w_hi, int per_decade);
    // Gamma_FT(w) = eta |w| e^{-|w|/w_cut}
    static NoiseModel ohmic(double eta, double w_cut);
    // taus start at 0 and increase strictly; omega samples may be empty (Omega == 0).
    static NoiseModel tabulated(std::vector<double> taus, std::vector<double> gamma,
                                std::vector<double> omega = {});

    NoiseModel with_omega(const DampedSineOmega& om) const;
    // All strengths multiplied by lambda.
    NoiseModel scaled(double lambda) const;

    NoiseKind kind() const { return kind_; }
    const std::vector<LorentzianTerm>& terms() const { return terms_; }
    double white_rate() const { return gamma_w_; }
    double ohmic_eta() const { return eta_; }
    double ohmic_cutoff() const { return w_cut_; }
    bool has_omega() const;
    const DampedSineOmega& omega_spec() const { return omega_; }
    const std::vector<double>& table_taus() const { return taus_; }
    const std::vector<double>& table_gamma() const { return tab_gamma_; }
    const std::vector<double>& table_omega() const { return tab_omega_; }

    // Gamma(|t|), sign(t) Omega(|t|). The white kind has no regular part: Gamma == 0 here,
    // its delta weight lives in white_rate().
    Correlation correlation_at(double tau) const;
    LaplacePair laplace_at(cplx s) const;
    FourierPair fourier_spectrum_at(double w) const;
    // Phi_FT(w) = (Gamma_FT(w) - Omega_FT(w)) / 2, the one-sided-equivalent density.
    double phi_ft(double w) const;

    NoiseSpectra spectra() const;
    double sigma_min() const;

    double gamma0() const;         // regular Gamma(0)
    double omega_max() const;      // max_t |Omega(t)|
    double correlation_time() const; // shortest time scale in the model; infinity for white
    // Lag beyond which |Gamma| + |Omega| < rel (Gamma(0) + |Omega|max); bound via monotone envelopes.
    double decay_horizon(double rel) const;
    bool is_zero() const;

private:
    NoiseKind kind_ = NoiseKind::lorentzian;
    std::vector<LorentzianTerm> terms_;
    double gamma_w_ = 0.0;
    double eta_ = 0.0;
    double w_cut_ = 1.0;
    std::vector<double> taus_, tab_gamma_, tab_omega_;
    DampedSineOmega omega_;

    cplx laplace_gamma(cplx s) const;
    cplx laplace_omega(cplx s) const;
    double envelope(double tau) const;
};

// Gamma_+- and Omega_+-: half-sum / half-difference of the transforms at s +/- i*delta.
ModulatedSpectra modulated_at(const NoiseSpectra& spectra, double delta, cplx s);

} // namespace qnoise

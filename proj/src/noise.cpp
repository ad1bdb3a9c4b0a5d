#include "qnoise/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qnoise/error.hpp"
#include "qnoise/expint.hpp"

namespace qnoise {

namespace {

constexpr double pi = std::numbers::pi;

void require(bool ok, const std::string& msg) {
    if (!ok) throw InvalidArgument(msg);
}

bool nonneg(double x) { return std::isfinite(x) && x >= 0.0; }
bool positive(double x) { return std::isfinite(x) && x > 0.0; }

cplx pole_term(double g2, double rate, cplx s) {
    const cplx d = s + rate;
    if (std::abs(d) <= 1e-15 * rate) throw SingularEvaluation("laplace: pole at s = -1/tau_c", s);
    return g2 / d;
}

double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

} // namespace

std::string to_string(NoiseKind kind) {
    switch (kind) {
    case NoiseKind::lorentzian: return "lorentzian";
    case NoiseKind::white: return "white";
    case NoiseKind::lorentzian_sum: return "lorentzian_sum";
    case NoiseKind::ohmic: return "ohmic";
    case NoiseKind::tabulated: return "tabulated";
    }
    return "unknown";
}

NoiseKind noise_kind_from_string(const std::string& name) {
    if (name == "lorentzian") return NoiseKind::lorentzian;
    if (name == "white") return NoiseKind::white;
    if (name == "lorentzian_sum") return NoiseKind::lorentzian_sum;
    if (name == "ohmic") return NoiseKind::ohmic;
    if (name == "tabulated") return NoiseKind::tabulated;
    throw InvalidArgument("unknown noise kind '" + name + "'");
}

NoiseSpectra NoiseSpectra::zero() {
    NoiseSpectra z;
    z.laplace_gamma = [](cplx) { return cplx(0.0); };
    z.laplace_omega = [](cplx) { return cplx(0.0); };
    return z;
}

NoiseModel NoiseModel::lorentzian(double g2, double tau_c) {
    require(nonneg(g2), "lorentzian: g2 must be >= 0");
    require(positive(tau_c), "lorentzian: tau_c must be > 0");
    NoiseModel m;
    m.kind_ = NoiseKind::lorentzian;
    m.terms_ = {{g2, tau_c}};
    return m;
}

NoiseModel NoiseModel::white(double gamma_w) {
    require(nonneg(gamma_w), "white: gamma_w must be >= 0");
    NoiseModel m;
    m.kind_ = NoiseKind::white;
    m.gamma_w_ = gamma_w;
    return m;
}

NoiseModel NoiseModel::lorentzian_sum(std::vector<LorentzianTerm> terms) {
    require(!terms.empty(), "lorentzian_sum: no terms");
    for (const auto& t : terms) {
        require(nonneg(t.g2), "lorentzian_sum: g2 must be >= 0");
        require(positive(t.tau_c), "lorentzian_sum: tau_c must be > 0");
    }
    NoiseModel m;
    m.kind_ = NoiseKind::lorentzian_sum;
    m.terms_ = std::move(terms);
    return m;
}

NoiseModel NoiseModel::one_over_f(double amplitude, double w_lo, double w_hi, int per_decade) {
    require(nonneg(amplitude), "one_over_f: amplitude must be >= 0");
    require(positive(w_lo) && w_hi > w_lo, "one_over_f: need 0 < w_lo < w_hi");
    require(per_decade >= 1, "one_over_f: per_decade must be >= 1");
    // corners spaced by ln(10)/per_decade in log-frequency
    const double density = per_decade / std::log(10.0);
    const double g2 = amplitude / (density * pi);
    const int n = static_cast<int>(std::ceil(std::log10(w_hi / w_lo) * per_decade)) + 1;
    std::vector<LorentzianTerm> terms;
    for (int k = 0; k < n; ++k) {
        const double corner = w_lo * std::pow(10.0, static_cast<double>(k) / per_decade);
        terms.push_back({g2, 1.0 / corner});
    }
    return lorentzian_sum(std::move(terms));
}

NoiseModel NoiseModel::ohmic(double eta, double w_cut) {
    require(nonneg(eta), "ohmic: eta must be >= 0");
    require(positive(w_cut), "ohmic: w_cut must be > 0");
    NoiseModel m;
    m.kind_ = NoiseKind::ohmic;
    m.eta_ = eta;
    m.w_cut_ = w_cut;
    return m;
}

NoiseModel NoiseModel::tabulated(std::vector<double> taus, std::vector<double> gamma, std::vector<double> omega) {
    require(taus.size() >= 2, "tabulated: need at least 2 samples");
    require(gamma.size() == taus.size(), "tabulated: gamma length differs from tau grid");
    require(omega.empty() || omega.size() == taus.size(), "tabulated: omega length differs from tau grid");
    require(taus[0] == 0.0, "tabulated: grid must start at tau = 0");
    for (std::size_t i = 1; i < taus.size(); ++i)
        require(taus[i] > taus[i - 1], "tabulated: grid must be strictly increasing");
    for (double g : gamma) require(std::isfinite(g), "tabulated: non-finite gamma sample");
    for (double o : omega) require(std::isfinite(o), "tabulated: non-finite omega sample");
    if (!omega.empty()) omega[0] = 0.0;
    NoiseModel m;
    m.kind_ = NoiseKind::tabulated;
    m.taus_ = std::move(taus);
    m.tab_gamma_ = std::move(gamma);
    m.tab_omega_ = std::move(omega);
    return m;
}

NoiseModel NoiseModel::with_omega(const DampedSineOmega& om) const {
    require(std::isfinite(om.a), "omega: amplitude must be finite");
    require(positive(om.tau_c) && positive(om.tau_r), "omega: tau_c and tau_r must be > 0");
    require(kind_ != NoiseKind::tabulated, "omega: tabulated models carry their own omega samples");
    NoiseModel m = *this;
    m.omega_ = om;
    return m;
}

NoiseModel NoiseModel::scaled(double lambda) const {
    require(nonneg(lambda), "scaled: factor must be >= 0");
    NoiseModel m = *this;
    for (auto& t : m.terms_) t.g2 *= lambda;
    m.gamma_w_ *= lambda;
    m.eta_ *= lambda;
    for (double& g : m.tab_gamma_) g *= lambda;
    for (double& o : m.tab_omega_) o *= lambda;
    m.omega_.a *= lambda;
    return m;
}

bool NoiseModel::has_omega() const {
    if (kind_ == NoiseKind::tabulated)
        return std::any_of(tab_omega_.begin(), tab_omega_.end(), [](double o) { return o != 0.0; });
    return omega_.a != 0.0;
}

Correlation NoiseModel::correlation_at(double tau) const {
    const double t = std::abs(tau);
    Correlation c;
    switch (kind_) {
    case NoiseKind::lorentzian:
    case NoiseKind::lorentzian_sum:
        for (const auto& term : terms_) c.gamma += term.g2 * std::exp(-t / term.tau_c);
        break;
    case NoiseKind::white:
        break;
    case NoiseKind::ohmic: {
        const double a = 1.0 / w_cut_;
        const double d = a * a + t * t;
        c.gamma = eta_ / pi * (a * a - t * t) / (d * d);
        break;
    }
    case NoiseKind::tabulated: {
        if (t > taus_.back())
            throw InvalidArgument("tabulated: |tau| = " + std::to_string(t) + " is beyond the grid end " +
                                  std::to_string(taus_.back()) + " (no extrapolation)");
        auto it = std::upper_bound(taus_.begin(), taus_.end(), t);
        std::size_t j = static_cast<std::size_t>(it - taus_.begin());
        if (j >= taus_.size()) j = taus_.size() - 1;
        const std::size_t i = j - 1;
        const double w = (t - taus_[i]) / (taus_[j] - taus_[i]);
        c.gamma = (1 - w) * tab_gamma_[i] + w * tab_gamma_[j];
        if (!tab_omega_.empty()) c.omega = sgn(tau) * ((1 - w) * tab_omega_[i] + w * tab_omega_[j]);
        return c;
    }
    }
    if (omega_.a != 0.0)
        c.omega = -omega_.a * std::exp(-t / omega_.tau_c) * sgn(tau) * (1.0 - std::exp(-t / omega_.tau_r));
    return c;
}

cplx NoiseModel::laplace_gamma(cplx s) const {
    switch (kind_) {
    case NoiseKind::lorentzian:
    case NoiseKind::lorentzian_sum: {
        cplx sum = 0.0;
        for (const auto& term : terms_) sum += pole_term(term.g2, 1.0 / term.tau_c, s);
        return sum;
    }
    case NoiseKind::white:
        return gamma_w_ / 2.0;
    case NoiseKind::ohmic: {
        if (s.real() < 0.0) throw InvalidArgument("ohmic: Laplace transform needs Re s >= 0");
        if (s == cplx(0.0, 0.0) || eta_ == 0.0) return 0.0;
        const double a = 1.0 / w_cut_;
        // z1 = i s a sits on the upper side of the cut, z2 = -i s a on the lower side
        const cplx z1(-s.imag() * a, s.real() * a);
        const cplx z2(s.imag() * a, -s.real() * a);
        return eta_ / (2.0 * pi) * s * (scaled_e1(z1, CutSide::upper) + scaled_e1(z2, CutSide::lower));
    }
    case NoiseKind::tabulated: {
        if (s.real() < 0.0) throw InvalidArgument("tabulated: Laplace transform needs Re s >= 0");
        cplx sum = 0.0;
        cplx prev = tab_gamma_[0];
        for (std::size_t i = 1; i < taus_.size(); ++i) {
            const cplx cur = std::exp(-s * taus_[i]) * tab_gamma_[i];
            sum += 0.5 * (taus_[i] - taus_[i - 1]) * (prev + cur);
            prev = cur;
        }
        return sum;
    }
    }
    return 0.0;
}

cplx NoiseModel::laplace_omega(cplx s) const {
    if (kind_ == NoiseKind::tabulated) {
        if (tab_omega_.empty()) return 0.0;
        if (s.real() < 0.0) throw InvalidArgument("tabulated: Laplace transform needs Re s >= 0");
        cplx sum = 0.0, prev = 0.0;
        for (std::size_t i = 1; i < taus_.size(); ++i) {
            const cplx cur = std::exp(-s * taus_[i]) * tab_omega_[i];
            sum += 0.5 * (taus_[i] - taus_[i - 1]) * (prev + cur);
            prev = cur;
        }
        return sum;
    }
    if (omega_.a == 0.0) return 0.0;
    const double alpha = 1.0 / omega_.tau_c;
    const double beta = alpha + 1.0 / omega_.tau_r;
    return -(pole_term(omega_.a, alpha, s) - pole_term(omega_.a, beta, s));
}

LaplacePair NoiseModel::laplace_at(cplx s) const {
    if (kind_ == NoiseKind::tabulated) {
        const double scale = std::max(gamma0(), omega_max());
        const double tail = std::abs(tab_gamma_.back()) + (tab_omega_.empty() ? 0.0 : std::abs(tab_omega_.back()));
        if (scale > 0.0 && tail > 1e-2 * scale)
            throw InvalidArgument("tabulated: correlation has not decayed at the grid end (" +
                                  std::to_string(tail / scale) + " of peak)");
    }
    return {laplace_gamma(s), laplace_omega(s)};
}

FourierPair NoiseModel::fourier_spectrum_at(double w) const {
    FourierPair f;
    switch (kind_) {
    case NoiseKind::lorentzian:
    case NoiseKind::lorentzian_sum:
        for (const auto& term : terms_) f.gamma_ft += 2.0 * term.g2 * term.tau_c / (1.0 + w * w * term.tau_c * term.tau_c);
        break;
    case NoiseKind::white:
        f.gamma_ft = gamma_w_;
        break;
    case NoiseKind::ohmic:
        f.gamma_ft = eta_ * std::abs(w) * std::exp(-std::abs(w) / w_cut_);
        break;
    case NoiseKind::tabulated: {
        const LaplacePair l = laplace_at(cplx(0.0, w));
        f.gamma_ft = 2.0 * l.gamma.real();
        f.omega_ft = 2.0 * l.omega.imag();
        return f;
    }
    }
    if (omega_.a != 0.0) {
        const double alpha = 1.0 / omega_.tau_c;
        const double beta = alpha + 1.0 / omega_.tau_r;
        f.omega_ft = 2.0 * omega_.a * w * (1.0 / (w * w + alpha * alpha) - 1.0 / (w * w + beta * beta));
    }
    return f;
}

double NoiseModel::phi_ft(double w) const {
    const FourierPair f = fourier_spectrum_at(w);
    return 0.5 * (f.gamma_ft - f.omega_ft);
}

NoiseSpectra NoiseModel::spectra() const {
    NoiseSpectra sp;
    const NoiseModel self = *this;
    if (kind_ == NoiseKind::tabulated) self.laplace_at(1.0); // decay check up front
    sp.laplace_gamma = [self](cplx s) { return self.laplace_gamma(s); };
    sp.laplace_omega = [self](cplx s) { return self.laplace_omega(s); };
    sp.sigma_min = sigma_min();
    return sp;
}

double NoiseModel::sigma_min() const {
    double lo = -std::numeric_limits<double>::infinity();
    switch (kind_) {
    case NoiseKind::lorentzian:
    case NoiseKind::lorentzian_sum:
        for (const auto& term : terms_) lo = std::max(lo, -1.0 / term.tau_c);
        break;
    case NoiseKind::white:
        break;
    case NoiseKind::ohmic:
    case NoiseKind::tabulated:
        return 0.0;
    }
    if (omega_.a != 0.0) lo = std::max(lo, -1.0 / omega_.tau_c);
    return lo;
}

double NoiseModel::gamma0() const {
    switch (kind_) {
    case NoiseKind::tabulated: return std::abs(tab_gamma_[0]);
    case NoiseKind::white: return 0.0;
    default: return std::abs(correlation_at(0.0).gamma);
    }
}

double NoiseModel::omega_max() const {
    if (kind_ == NoiseKind::tabulated) {
        double m = 0.0;
        for (double o : tab_omega_) m = std::max(m, std::abs(o));
        return m;
    }
    if (omega_.a == 0.0) return 0.0;
    const double alpha = 1.0 / omega_.tau_c;
    const double beta = alpha + 1.0 / omega_.tau_r;
    const double t = std::log(beta / alpha) / (beta - alpha);
    return std::abs(omega_.a) * (std::exp(-alpha * t) - std::exp(-beta * t));
}

double NoiseModel::correlation_time() const {
    double t = std::numeric_limits<double>::infinity();
    switch (kind_) {
    case NoiseKind::lorentzian:
    case NoiseKind::lorentzian_sum:
        for (const auto& term : terms_) t = std::min(t, term.tau_c);
        break;
    case NoiseKind::white:
        break;
    case NoiseKind::ohmic:
        t = 1.0 / w_cut_;
        break;
    case NoiseKind::tabulated: {
        double area = 0.0;
        for (std::size_t i = 1; i < taus_.size(); ++i)
            area += 0.5 * (taus_[i] - taus_[i - 1]) * (std::abs(tab_gamma_[i]) + std::abs(tab_gamma_[i - 1]));
        const double g0 = std::abs(tab_gamma_[0]);
        return g0 > 0.0 ? area / g0 : taus_.back();
    }
    }
    if (omega_.a != 0.0) t = std::min({t, omega_.tau_c, omega_.tau_r});
    return t;
}

double NoiseModel::envelope(double tau) const {
    double e = 0.0;
    switch (kind_) {
    case NoiseKind::lorentzian:
    case NoiseKind::lorentzian_sum:
        for (const auto& term : terms_) e += term.g2 * std::exp(-tau / term.tau_c);
        break;
    case NoiseKind::white:
    case NoiseKind::tabulated:
        break;
    case NoiseKind::ohmic: {
        const double a = 1.0 / w_cut_;
        e = eta_ / pi / (a * a + tau * tau);
        break;
    }
    }
    if (omega_.a != 0.0) e += std::abs(omega_.a) * std::exp(-tau / omega_.tau_c);
    return e;
}

double NoiseModel::decay_horizon(double rel) const {
    if (is_zero() || kind_ == NoiseKind::white) return 0.0;
    const double threshold = rel * (gamma0() + omega_max());
    if (kind_ == NoiseKind::tabulated) {
        std::size_t last = 0;
        for (std::size_t i = 0; i < taus_.size(); ++i) {
            const double v = std::abs(tab_gamma_[i]) + (tab_omega_.empty() ? 0.0 : std::abs(tab_omega_[i]));
            if (v >= threshold) last = i;
        }
        return taus_[std::min(last + 1, taus_.size() - 1)];
    }
    double hi = correlation_time();
    while (envelope(hi) >= threshold) hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (envelope(mid) >= threshold ? lo : hi) = mid;
    }
    return hi;
}

bool NoiseModel::is_zero() const {
    switch (kind_) {
    case NoiseKind::lorentzian:
    case NoiseKind::lorentzian_sum:
        if (std::any_of(terms_.begin(), terms_.end(), [](const LorentzianTerm& t) { return t.g2 != 0.0; })) return false;
        break;
    case NoiseKind::white:
        if (gamma_w_ != 0.0) return false;
        break;
    case NoiseKind::ohmic:
        if (eta_ != 0.0) return false;
        break;
    case NoiseKind::tabulated:
        return std::all_of(tab_gamma_.begin(), tab_gamma_.end(), [](double g) { return g == 0.0; }) && !has_omega();
    }
    return omega_.a == 0.0;
}

ModulatedSpectra modulated_at(const NoiseSpectra& spectra, double delta, cplx s) {
    if (s.real() < spectra.sigma_min)
        throw InvalidArgument("modulated_at: Re s = " + std::to_string(s.real()) + " is outside the valid region");
    const cplx up = s + cplx(0.0, delta), dn = s - cplx(0.0, delta);
    const cplx gu = spectra.laplace_gamma(up), gd = spectra.laplace_gamma(dn);
    const cplx ou = spectra.laplace_omega(up), od = spectra.laplace_omega(dn);
    const cplx two_i(0.0, 2.0);
    return {(gu + gd) / 2.0, (gu - gd) / two_i, (ou + od) / 2.0, (ou - od) / two_i};
}

} // namespace qnoise

#include "qnoise/validation.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "qnoise/pipeline.hpp"
#include "qnoise/units.hpp"

namespace qnoise {

namespace {

constexpr double pi = std::numbers::pi;

double rel(cplx a, cplx b) {
    const double m = std::max(std::abs(a), std::abs(b));
    return m == 0.0 ? 0.0 : std::abs(a - b) / m;
}

Check make(std::string name, double measured, double tol, std::string detail = {}) {
    return {std::move(name), measured, tol, measured <= tol, std::move(detail)};
}

template <class F>
SuiteResult timed(const std::string& name, F body) {
    SuiteResult r;
    r.suite = name;
    const auto t0 = std::chrono::steady_clock::now();
    body(r.checks);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

NoiseModel a2_lorentzian(double d) { return NoiseModel::lorentzian(0.01 * d * d, 2.0 / d); }
DampedSineOmega a2_omega(double d) { return {0.003 * d * d, 1.5 / d, 0.7 / d}; }

} // namespace

bool SuiteResult::pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

json SuiteResult::to_json() const {
    json j;
    j["suite"] = suite;
    j["pass"] = pass();
    j["seconds"] = seconds;
    j["checks"] = json::array();
    for (const auto& c : checks) {
        json k = {{"name", c.name}, {"measured", c.measured}, {"pass", c.pass}};
        k["tolerance"] = std::isfinite(c.tolerance) ? json(c.tolerance) : json("reported only");
        if (!c.detail.empty()) k["detail"] = c.detail;
        j["checks"].push_back(k);
    }
    return j;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"free-evolution",   "closed-form-equivalence", "golden-rule",
                                                "mc-born",          "symmetry",                "relaxation-inversion",
                                                "identification-roundtrip", "delta-detection"};
    return names;
}

SuiteResult free_evolution_suite(const SuiteParams& sp) {
    return timed("free-evolution", [&](std::vector<Check>& out) {
        const double d = sp.delta;
        const ChargeQubitParams p = params_from_gap(d, pi / 2);
        const NoiseModel none = NoiseModel::lorentzian(0.0, 0.2 / d);
        const SystemSpec sys = make_system(p, Frame::charge_basis, InitialState::zero_charge, none.spectra());
        SimConfig c;
        c.dt = 0.02 / d;
        c.T = 20.0 * 2.0 * pi / d;
        const Trajectory tr = integrate_volterra(sys, none, c);
        double err = 0.0;
        for (std::size_t k = 0; k < tr.q.size(); ++k)
            err = std::max(err, std::abs(tr.q[k] - 0.5 * (1.0 - std::cos(d * tr.times[k]))));
        out.push_back(make("max |Q(t) - (1 - cos Delta t)/2| over 20 periods", err, 1e-6));
    });
}

SuiteResult closed_form_suite(const SuiteParams& sp) {
    return timed("closed-form-equivalence", [&](std::vector<Check>& out) {
        const double d = sp.delta;
        const NoiseModel lor = a2_lorentzian(d);
        const NoiseModel lor_om = lor.with_omega(a2_omega(d));
        double worst_q = 0.0, worst_rate = 0.0;
        for (double th : {pi / 4, pi / 3, pi / 2, 2 * pi / 3}) {
            const ChargeQubitParams p = params_from_gap(d, th);
            for (const NoiseModel* m : {&lor, &lor_om}) {
                const NoiseSpectra sp2 = m->spectra();
                for (int j = 0; j < 200; ++j) {
                    const cplx s(0.0, d * (0.1 + 2.9 * j / 199.0));
                    worst_q = std::max(worst_q, rel(closed_form_Q_theta(p, sp2, s), generic_Q_theta(p, sp2, s)));
                    if (p.at_optimal_point()) {
                        worst_rate = std::max(worst_rate, rel(closed_form_rate_down(p, sp2, s), generic_rate_down(p, sp2, s)));
                        worst_rate = std::max(worst_rate, rel(closed_form_rate_up(p, sp2, s), generic_rate_up(p, sp2, s)));
                    }
                }
            }
        }
        out.push_back(make("Q_theta closed form vs generic, max relative", worst_q, 1e-10));
        out.push_back(make("optimal-point rates closed form vs generic, max relative", worst_rate, 1e-10));
    });
}

SuiteResult golden_rule_suite(const SuiteParams& sp) {
    return timed("golden-rule", [&](std::vector<Check>& out) {
        const double d = sp.delta;
        const NoiseModel lor = a2_lorentzian(d);
        const double gp0 = modulated_at(lor.spectra(), d, 0.0).gamma_plus.real();
        out.push_back(make("weak coupling: Gamma_+(0) / Delta", gp0 / d, 0.01));
        for (double th : {pi / 2, pi / 3}) {
            const ChargeQubitParams p = params_from_gap(d, th);
            const SystemSpec sys = make_system(p, Frame::eigen_basis, InitialState::excited, lor.spectra());
            const StationaryRates r = stationary_rates(sys);
            const GoldenRule g = golden_rule_rates(p, lor);
            const std::string tag = "theta = " + fmt(th) + ": ";
            out.push_back(make(tag + "stationary down rate vs golden rule, relative", std::abs(r.down / g.down - 1.0), 0.05,
                               "stationary " + fmt(r.down) + ", golden rule " + fmt(g.down)));
            out.push_back(make(tag + "stationary up rate vs golden rule, relative", std::abs(r.up / g.up - 1.0), 0.05,
                               "stationary " + fmt(r.up) + ", golden rule " + fmt(g.up)));
        }
    });
}

SuiteResult mc_born_suite(const SuiteParams& sp) {
    return timed("mc-born", [&](std::vector<Check>& out) {
        const double d = sp.delta;
        const ChargeQubitParams p = params_from_gap(d, pi / 2);
        const QubitFrame fr = make_frame(p, Frame::charge_basis, InitialState::zero_charge);
        SimConfig c;
        c.dt = 0.01 / d;
        c.T = 20.0 * 2.0 * pi / d;
        struct Gap {
            double gap = 0.0, err = 0.0;
        };
        auto run = [&](double g2, double tau) {
            const NoiseModel m = NoiseModel::lorentzian(g2, tau);
            const SystemSpec sys = make_system(p, Frame::charge_basis, InitialState::zero_charge, m.spectra());
            const Trajectory born = integrate_volterra(sys, m, c);
            const EnsembleResult mc = monte_carlo_reference(fr.H0, fr.H1, fr.v0, {g2, tau}, sp.n_traj, c, sp.seed);
            Gap g;
            for (std::size_t k = 0; k < born.q.size(); ++k) {
                g.gap = std::max(g.gap, std::abs(born.q[k] - mc.mean.q[k]));
                g.err = std::max(g.err, mc.stderr_q[k]);
            }
            return g;
        };
        const Gap weak = run(0.01 * d * d, 0.2 / d);
        const std::string n = std::to_string(sp.n_traj);
        std::string budget;
        // 3 sigma band against half the gap tolerance
        const double resolve = 0.5 * 0.02 / 3.0;
        if (weak.err > resolve) {
            const double need = static_cast<double>(sp.n_traj) * (weak.err / resolve) * (weak.err / resolve);
            budget = "stderr-dominated: max stderr " + fmt(weak.err) + " with n_traj = " + n + " gives a 3-sigma band of " +
                     fmt(3.0 * weak.err) + ", more than half the 0.02 gap tolerance; stderr falls as 1/sqrt(n_traj), so about " +
                     std::to_string(static_cast<long long>(std::ceil(need))) + " trajectories are needed";
        }
        out.push_back(make("max stderr of Q_MC (n_traj = " + n + ")", weak.err, 0.01, budget));
        out.push_back(make("statistical resolution: 3 x max stderr vs half the gap tolerance", 3.0 * weak.err, 0.01, budget));
        out.push_back(make("weak coupling max |Q_MC - Q_Born|", weak.gap, 0.02, budget));
        const Gap strong = run(0.25 * d * d, 2.0 / d);
        Check ctl{"strong-coupling control gap exceeds the weak-coupling gap", strong.gap, weak.gap, strong.gap > weak.gap,
                  "strong gap " + fmt(strong.gap) + " vs weak gap " + fmt(weak.gap)};
        out.push_back(ctl);
    });
}

SuiteResult symmetry_suite(const SuiteParams& sp) {
    return timed("symmetry", [&](std::vector<Check>& out) {
        const double d = sp.delta;
        std::mt19937_64 rng(sp.seed);
        auto logu = [&](double lo, double hi) {
            return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(rng));
        };
        auto with_om = [&](const NoiseModel& m) {
            return m.with_omega({logu(1e-4, 1e-2) * d * d, logu(0.1, 10.0) / d, logu(0.1, 10.0) / d});
        };
        std::vector<std::pair<std::string, std::function<NoiseModel()>>> kinds{
            {"lorentzian", [&] { return NoiseModel::lorentzian(logu(1e-4, 1e-1) * d * d, logu(0.1, 10.0) / d); }},
            {"lorentzian_sum",
             [&] {
                 std::vector<LorentzianTerm> t;
                 const int n = 2 + static_cast<int>(rng() % 3);
                 for (int i = 0; i < n; ++i) t.push_back({logu(1e-4, 1e-1) * d * d, logu(0.1, 10.0) / d});
                 return NoiseModel::lorentzian_sum(t);
             }},
            {"white", [&] { return NoiseModel::white(logu(1e-3, 1e-1) * d); }},
            {"ohmic", [&] { return NoiseModel::ohmic(logu(1e-3, 1e-1), logu(0.5, 10.0) * d); }},
        };
        for (auto& [name, draw] : kinds) {
            double even = 0.0, ft = 0.0, foot = 0.0;
            for (int i = 0; i < 50; ++i) {
                const NoiseModel m = (i % 2) ? with_om(draw()) : draw();
                const NoiseSpectra spec = m.spectra();
                for (int k = 0; k < 8; ++k) {
                    const double tau = logu(1e-3, 10.0) / d;
                    const Correlation a = m.correlation_at(tau), b = m.correlation_at(-tau);
                    even = std::max({even, rel(a.gamma, b.gamma), rel(a.omega, -b.omega)});
                    const double w = logu(0.05, 5.0) * d;
                    const FourierPair f = m.fourier_spectrum_at(w);
                    const LaplacePair l = m.laplace_at(cplx(0.0, w));
                    ft = std::max({ft, rel(f.gamma_ft, 2.0 * l.gamma.real()), rel(f.omega_ft, 2.0 * l.omega.imag())});
                    const double delta = logu(0.2, 5.0) * d;
                    const ModulatedSpectra ms = modulated_at(spec, delta, 0.0);
                    foot = std::max({foot, rel(m.phi_ft(delta), ms.gamma_plus - ms.omega_minus),
                                     rel(m.phi_ft(-delta), ms.gamma_plus + ms.omega_minus)});
                }
            }
            out.push_back(make(name + ": Gamma even, Omega odd", even, 1e-12));
            out.push_back(make(name + ": Gamma_FT = 2 Re Gamma(iw), Omega_FT = 2 Im Omega(iw)", ft, 1e-12));
            out.push_back(make(name + ": Phi_FT(+-Delta) = Gamma_+(0) -+ Omega_-(0)", foot, 1e-12));
        }
    });
}

SuiteResult relaxation_inversion_suite(const SuiteParams& sp) {
    return timed("relaxation-inversion", [&](std::vector<Check>& out) {
        const double d = sp.delta;
        const ChargeQubitParams p = params_from_gap(d, pi / 2);
        auto recover = [&](const NoiseModel& m, double& gp, double& om, RelaxationVariant v = RelaxationVariant::exact) {
            const NoiseSpectra spec = m.spectra();
            SampledTransform up, down;
            for (int j = 0; j < 200; ++j) {
                const cplx s = d * (0.1 + 1.9 * j / 199.0);
                up.s.push_back(s);
                down.s.push_back(s);
                up.values.push_back(closed_form_rate_up(p, spec, s));
                down.values.push_back(closed_form_rate_down(p, spec, s));
            }
            const RelaxationEstimate r = identify_from_relaxation(up, down, 1e-12, v);
            gp = om = 0.0;
            for (std::size_t j = 0; j < r.s.size(); ++j) {
                const ModulatedSpectra ms = modulated_at(spec, d, r.s[j]);
                gp = std::max(gp, rel(r.gamma_plus[j], ms.gamma_plus));
                om = std::max(om, std::abs(r.omega_minus[j] - ms.omega_minus) / std::max(std::abs(ms.gamma_plus), 1e-300));
            }
        };
        double gp = 0.0, om = 0.0;
        recover(a2_lorentzian(d).with_omega(a2_omega(d)), gp, om);
        out.push_back(make("Gamma_+(s) recovered on s in [0.1, 2] Delta, max relative", gp, 1e-10));
        out.push_back(make("Omega_-(s) recovered, max error relative to |Gamma_+|", om, 1e-10));
        recover(a2_lorentzian(d), gp, om);
        out.push_back(make("Omega == 0 model: Omega_- estimate relative to |Gamma_+|", om, 1e-10));
        recover(a2_lorentzian(d).with_omega(a2_omega(d)), gp, om, RelaxationVariant::printed);
        out.push_back({"printed Omega_- form vs modulated Omega_-, relative to |Gamma_+|", om,
                       std::numeric_limits<double>::infinity(), true, "reported, not gated"});
    });
}

SuiteResult identification_roundtrip_suite(const SuiteParams& sp) {
    return timed("identification-roundtrip", [&](std::vector<Check>& out) {
        const double d = sp.delta;
        const ChargeQubitParams p = params_from_gap(d, pi / 2);
        auto roundtrip = [&](const NoiseModel& m, const std::string& tag) {
            const SystemSpec sys = make_system(p, Frame::charge_basis, InitialState::zero_charge, m.spectra());
            SimConfig c;
            c.dt = 0.02 / d;
            c.T = 12000.0 / d;
            const Trajectory tr = integrate_volterra(sys, m, c);
            const MeasurementTrace ac = detrend(MeasurementTrace::uniform(tr.q, c.dt, Scenario::coherent_oscillation));
            const DiscreteLaplace dl = discrete_laplace(ac, frequency_grid(ac, 0.5 * d, 1.5 * d));
            out.push_back(make(tag + ": |Q_AC(T)| / max |Q_AC|", dl.truncation_residual, 0.01));
            const SpectrumEstimate e19 = identify_gamma_complex(add_dc(dl, 0.5), p);
            const SpectrumEstimate exact = identify_gamma_ft_ac(dl, p, AcVariant::exact);
            const SpectrumEstimate printed = identify_gamma_ft_ac(dl, p, AcVariant::paper_eq21);
            double w19 = 0.0, wex = 0.0, disc = 0.0;
            std::size_t used = 0;
            for (std::size_t j = 0; j < dl.omegas.size(); ++j) {
                const double truth = m.fourier_spectrum_at(dl.omegas[j]).gamma_ft;
                if (!e19.masked[j]) w19 = std::max(w19, std::abs(e19.gamma_ft[j] / truth - 1.0));
                if (!exact.masked[j]) {
                    wex = std::max(wex, std::abs(exact.gamma_ft[j] / truth - 1.0));
                    ++used;
                }
                if (!exact.masked[j] && !printed.masked[j])
                    disc = std::max(disc, std::abs(printed.gamma_ft[j] - exact.gamma_ft[j]) / std::abs(truth));
            }
            const std::string bins = std::to_string(used) + " unmasked bins of " + std::to_string(dl.omegas.size());
            out.push_back(make(tag + ": eq19 Gamma_FT on [0.5, 1.5] Delta, max relative", w19, 0.10, bins));
            out.push_back(make(tag + ": ac-exact Gamma_FT on [0.5, 1.5] Delta, max relative", wex, 0.10, bins));
            out.push_back({tag + ": eq21 printed variant minus ac-exact, max relative to truth", disc,
                           std::numeric_limits<double>::infinity(), true, "reported, not gated"});
            out.push_back(make(tag + ": unmasked bins present", used > 0 ? 0.0 : 1.0, 0.0, bins));
        };
        roundtrip(NoiseModel::lorentzian(0.01 * d * d, 0.2 / d), "lorentzian");
        roundtrip(NoiseModel::white(0.004 * d), "white");
    });
}

SuiteResult delta_detection_suite(const SuiteParams& sp) {
    return timed("delta-detection", [&](std::vector<Check>& out) {
        // fixed acquisition: 6 GHz, 9 ps sampling, 2900 ps record
        const double d = units::ghz_to_rad_per_ps(6.0);
        const double dt = 9.0, T = 2900.0;
        const ChargeQubitParams p = params_from_gap(d, pi / 2);
        const NoiseModel none = NoiseModel::lorentzian(0.0, 100.0);
        const SystemSpec sys = make_system(p, Frame::charge_basis, InitialState::zero_charge, none.spectra());
        SimConfig c;
        c.dt = dt / 3.0;
        c.T = T;
        c.output_stride = 3;
        const Trajectory tr = integrate_volterra(sys, none, c);
        const std::size_t n = static_cast<std::size_t>(std::floor(T / dt + 1e-9)) + 1;
        for (double stddev : {0.0, 0.02}) {
            std::vector<double> q(tr.q.begin(), tr.q.begin() + static_cast<std::ptrdiff_t>(n));
            for (std::size_t k = 0; k < n && stddev > 0.0; ++k) {
                SplitMix64 rng(sp.seed, k);
                q[k] += std::normal_distribution<double>(0.0, stddev)(rng);
            }
            const MeasurementTrace ac = detrend(MeasurementTrace::uniform(q, dt, Scenario::coherent_oscillation));
            const DiscreteLaplace dl = discrete_laplace(ac, frequency_grid(ac));
            const DeltaEstimate e = detect_delta(dl, ac.T);
            out.push_back(make("measurement noise " + fmt(stddev) + ": |Delta_hat - Delta| in bins", std::abs(e.delta - d) / e.bin_width,
                               1.0, "Delta_hat " + fmt(e.delta) + " rad/ps, truth " + fmt(d)));
        }
    });
}

std::vector<SuiteResult> run_suites(const std::string& name, const SuiteParams& sp) {
    using Fn = SuiteResult (*)(const SuiteParams&);
    static const std::vector<std::pair<std::string, Fn>> table{
        {"free-evolution", free_evolution_suite},
        {"closed-form-equivalence", closed_form_suite},
        {"golden-rule", golden_rule_suite},
        {"mc-born", mc_born_suite},
        {"symmetry", symmetry_suite},
        {"relaxation-inversion", relaxation_inversion_suite},
        {"identification-roundtrip", identification_roundtrip_suite},
        {"delta-detection", delta_detection_suite},
    };
    std::vector<SuiteResult> out;
    for (const auto& [n, fn] : table)
        if (name == "all" || name == n) out.push_back(fn(sp));
    if (out.empty()) {
        std::string known = "all";
        for (const auto& [n, fn] : table) known += ", " + n;
        throw InvalidArgument("validate: unknown suite '" + name + "' (" + known + ")");
    }
    return out;
}

std::vector<SuiteResult> run_validate(const RunConfig& cfg) {
    SuiteParams sp;
    sp.delta = cfg.qubit.params().delta;
    sp.n_traj = cfg.validate.n_traj;
    sp.seed = cfg.seed;
    const std::vector<SuiteResult> res = run_suites(cfg.validate.suite, sp);
    json j;
    j["suite"] = cfg.validate.suite;
    bool all = true;
    j["suites"] = json::array();
    for (const auto& r : res) {
        all = all && r.pass();
        j["suites"].push_back(r.to_json());
    }
    j["pass"] = all;
    write_json((std::filesystem::path(cfg.out_dir) / "validate.json").string(), j);
    return res;
}

} // namespace qnoise

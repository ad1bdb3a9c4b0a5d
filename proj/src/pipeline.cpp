#include "qnoise/pipeline.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "qnoise/units.hpp"

namespace qnoise {

namespace fs = std::filesystem;

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t measurement_stream_key = 0x6d6561732d6e6f69ULL;

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
}

std::ofstream open_out(const std::string& path) {
    const fs::path parent = fs::path(path).parent_path();
    if (!parent.empty()) ensure_dir(parent.string());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    return out;
}

void close_out(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("write failed for " + path);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_num(const std::string& cell, const std::string& path, std::size_t line) {
    std::string c = cell;
    while (!c.empty() && (c.back() == '\r' || c.back() == ' ')) c.pop_back();
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(c, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != c.size())
        throw IoError(path + ":" + std::to_string(line) + ": cannot parse number '" + c + "'");
    return v;
}

std::vector<std::vector<double>> read_csv(const std::string& path, const std::vector<std::string>& required,
                                          std::vector<std::string>& header) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw IoError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    header = split(line);
    for (std::size_t i = 0; i < required.size(); ++i)
        if (i >= header.size() || header[i] != required[i])
            throw IoError(path + ":1: expected column " + std::to_string(i + 1) + " to be '" + required[i] + "'");
    std::vector<std::vector<double>> rows;
    std::size_t n = 1;
    while (std::getline(in, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != header.size())
            throw IoError(path + ":" + std::to_string(n) + ": expected " + std::to_string(header.size()) + " columns");
        std::vector<double> row;
        for (const auto& c : cells) row.push_back(parse_num(c, path, n));
        rows.push_back(std::move(row));
    }
    return rows;
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw IoError(path + ": " + e.what());
    }
}

struct ScenarioFrame {
    Frame frame;
    InitialState init;
};

ScenarioFrame frame_for(Scenario s) {
    switch (s) {
    case Scenario::coherent_oscillation: return {Frame::charge_basis, InitialState::zero_charge};
    case Scenario::relaxation_down: return {Frame::eigen_basis, InitialState::excited};
    case Scenario::relaxation_up: return {Frame::eigen_basis, InitialState::ground};
    }
    return {Frame::charge_basis, InitialState::zero_charge};
}

json acquisition_json(const Acquisition& a) {
    json j;
    j["dt_ps"] = a.dt;
    j["T_ps"] = a.T;
    j["measurement_noise_stddev"] = a.measurement_noise_stddev;
    j["shots_per_point"] = a.shots_per_point ? json(*a.shots_per_point) : json(nullptr);
    return j;
}

json error_json(const Error& e) {
    static const char* names[] = {"invalid_argument", "singular_evaluation", "pole", "convergence", "detection", "io"};
    return {{"kind", names[static_cast<int>(e.kind())]}, {"message", e.what()}};
}

Method method_from_flag(const std::string& m) {
    if (m == "eq19") return Method::eq19_complex;
    if (m == "eq20") return Method::eq20_ft;
    if (m == "eq21") return Method::eq21_ac_paper;
    if (m == "ac-exact") return Method::ac_exact_derived;
    if (m == "relaxation") return Method::relaxation_pair;
    if (m == "golden-rule") return Method::golden_rule_sweep;
    throw InvalidArgument("identify: unknown method '" + m + "' (eq19, eq20, eq21, ac-exact, relaxation, golden-rule)");
}

std::vector<double> band_grid(const MeasurementTrace& trace, const IdentifySettings& s) {
    const double nyquist = std::numbers::pi / trace.dt;
    const double lo = s.band_lo_ghz ? units::ghz_to_rad_per_ps(*s.band_lo_ghz) : 0.0;
    const double hi = s.band_hi_ghz ? units::ghz_to_rad_per_ps(*s.band_hi_ghz) : nyquist;
    if (hi > nyquist * (1.0 + 1e-12))
        throw InvalidArgument("identify: band upper edge " + fmt(units::rad_per_ps_to_ghz(hi)) +
                              " GHz lies beyond the Nyquist frequency " + fmt(units::rad_per_ps_to_ghz(nyquist)) + " GHz");
    auto grid = frequency_grid(trace, lo, hi);
    if (grid.size() < 3) throw InvalidArgument("identify: fewer than 3 frequency bins in the requested band");
    return grid;
}

// transition rate -v3(0) dv3/dt from a trace of (1 - v3) / 2
MeasurementTrace rate_trace(const MeasurementTrace& q) {
    Trajectory traj;
    traj.times = q.times;
    for (double x : q.values) traj.states.push_back(Vec4(1.0, 0.0, 0.0, 1.0 - 2.0 * x));
    const double v30 = q.meta == Scenario::relaxation_down ? -1.0 : 1.0;
    std::vector<double> g = transition_rate_trace(traj);
    for (double& x : g) x *= -2.0 * v30;
    return MeasurementTrace::from_samples(q.times, g, q.meta);
}

} // namespace

std::string sidecar_path(const std::string& csv_path) {
    fs::path p(csv_path);
    p.replace_extension(".json");
    return p.string();
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
    close_out(out, path);
}

void write_trace_file(const std::string& csv_path, const TraceFile& file) {
    const auto& t = file.trace;
    const bool with_err = !file.q_stderr.empty();
    if (with_err && file.q_stderr.size() != t.values.size()) throw InvalidArgument("trace file: stderr column length differs");
    std::ofstream out = open_out(csv_path);
    out << "time_ps,q_mean" << (with_err ? ",q_stderr" : "") << '\n';
    for (std::size_t k = 0; k < t.values.size(); ++k) {
        out << fmt(t.times[k]) << ',' << fmt(t.values[k]);
        if (with_err) out << ',' << fmt(file.q_stderr[k]);
        out << '\n';
    }
    close_out(out, csv_path);
    json meta = file.meta;
    meta["scenario"] = to_string(t.meta);
    meta["units"] = {{"time", "ps"}, {"q_mean", "dimensionless"}, {"frequency", "GHz unless the key says rad_per_ps"}};
    write_json(sidecar_path(csv_path), meta);
}

TraceFile read_trace_file(const std::string& csv_path) {
    std::vector<std::string> header;
    const auto rows = read_csv(csv_path, {"time_ps", "q_mean"}, header);
    const bool with_err = header.size() >= 3 && header[2] == "q_stderr";
    if (header.size() > (with_err ? 3u : 2u)) throw IoError(csv_path + ":1: unexpected extra columns");
    TraceFile f;
    // no sidecar: a bare coherent-oscillation record
    f.meta = fs::exists(sidecar_path(csv_path)) ? read_json(sidecar_path(csv_path)) : json{{"scenario", "coherent_oscillation"}};
    if (!f.meta.contains("scenario") || !f.meta["scenario"].is_string())
        throw IoError(sidecar_path(csv_path) + ": missing \"scenario\"");
    const Scenario sc = scenario_from_string(f.meta["scenario"].get<std::string>());
    std::vector<double> times, values;
    for (const auto& r : rows) {
        times.push_back(r[0]);
        values.push_back(r[1]);
        if (with_err) f.q_stderr.push_back(r[2]);
    }
    try {
        f.trace = MeasurementTrace::from_samples(std::move(times), std::move(values), sc);
    } catch (const InvalidArgument& e) {
        throw IoError(csv_path + ": " + e.what());
    }
    return f;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream out = open_out(path);
    out << "time_ps,v0,v1,v2,v3,q\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const Vec4& v = traj.states[k];
        out << fmt(traj.times[k]) << ',' << fmt(v(0)) << ',' << fmt(v(1)) << ',' << fmt(v(2)) << ',' << fmt(v(3)) << ','
            << fmt(traj.q[k]) << '\n';
    }
    close_out(out, path);
}

void write_spectrum_csv(const std::string& path, const SpectrumEstimate& est) {
    const bool with_bias = !est.bias_estimate.empty();
    std::ofstream out = open_out(path);
    out << "omega_rad_per_ps,gamma_ft,masked,denominator_abs,frequency_ghz" << (with_bias ? ",bias_estimate" : "") << '\n';
    for (std::size_t j = 0; j < est.omegas.size(); ++j) {
        out << fmt(est.omegas[j]) << ',' << fmt(est.gamma_ft[j]) << ',' << (est.masked[j] ? 1 : 0) << ','
            << fmt(est.denominator_abs[j]) << ',' << fmt(units::rad_per_ps_to_ghz(est.omegas[j]));
        if (with_bias) out << ',' << fmt(est.bias_estimate[j]);
        out << '\n';
    }
    close_out(out, path);
}

SimulateOutput run_simulate(const RunConfig& cfg) {
    const Acquisition& acq = cfg.acquisition;
    acq.validate();
    const ChargeQubitParams p = cfg.qubit.params();
    const ScenarioFrame sf = frame_for(cfg.scenario);
    const NoiseModel& noise = cfg.noise;

    int stride = 1;
    double h = acq.dt;
    if (cfg.sim.dt) {
        h = *cfg.sim.dt;
        if (!(h > 0.0)) throw InvalidArgument("config: /sim/dt_ps must be > 0");
        const double r = acq.dt / h;
        stride = static_cast<int>(std::lround(r));
        if (stride < 1 || std::abs(r - stride) > 1e-9 * r)
            throw InvalidArgument("config: /sim/dt_ps must divide /acquisition/dt_ps");
    } else {
        double limit = 2.0 * std::numbers::pi / (20.0 * p.delta);
        const double corr = noise.correlation_time();
        if (std::isfinite(corr)) limit = std::min(limit, corr / 10.0);
        stride = static_cast<int>(std::ceil(acq.dt / limit - 1e-9));
        h = acq.dt / stride;
    }
    const std::size_t n_samples = static_cast<std::size_t>(std::floor(acq.T / acq.dt + 1e-9)) + 1;
    SimConfig sc;
    sc.dt = h;
    sc.T = acq.dt * static_cast<double>(n_samples - 1);
    sc.kernel_cut = cfg.sim.kernel_cut;
    sc.scheme = cfg.sim.scheme;
    sc.output_stride = stride;

    std::vector<double> q, q_err;
    if (cfg.sim.engine == Engine::volterra) {
        const SystemSpec sys = make_system(p, sf.frame, sf.init, noise.spectra());
        q = integrate_volterra(sys, noise, sc).q;
    } else {
        if (noise.kind() != NoiseKind::lorentzian || noise.has_omega())
            throw InvalidArgument("config: /sim/engine monte-carlo needs a single lorentzian noise term with no omega_model");
        const QubitFrame fr = make_frame(p, sf.frame, sf.init);
        const EnsembleResult ens = monte_carlo_reference(fr.H0, fr.H1, fr.v0, {noise.terms().front().g2, noise.terms().front().tau_c},
                                                         cfg.sim.n_traj, sc, cfg.seed);
        q = ens.mean.q;
        q_err = ens.stderr_q;
    }
    if (q.size() < n_samples) throw ConvergenceError("simulate: integrator returned too few samples", {});
    q.resize(n_samples);
    if (!q_err.empty()) q_err.resize(n_samples);

    SimulateOutput out;
    out.clean_q = q;
    std::vector<double> measured = q;
    for (std::size_t k = 0; k < n_samples; ++k) {
        SplitMix64 rng(cfg.seed ^ measurement_stream_key, k);
        if (acq.shots_per_point) {
            std::binomial_distribution<int> shots(*acq.shots_per_point, std::clamp(q[k], 0.0, 1.0));
            measured[k] = static_cast<double>(shots(rng)) / *acq.shots_per_point;
        } else if (acq.measurement_noise_stddev > 0.0) {
            std::normal_distribution<double> g(0.0, acq.measurement_noise_stddev);
            measured[k] += g(rng);
        }
    }
    std::vector<double> times(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) times[k] = acq.dt * static_cast<double>(k);

    out.file.trace = MeasurementTrace::from_samples(std::move(times), std::move(measured), cfg.scenario);
    out.file.q_stderr = q_err;
    json meta;
    meta["qubit"] = qubit_to_json(cfg.qubit);
    meta["noise"] = noise_to_json(noise);
    meta["acquisition"] = acquisition_json(acq);
    meta["sim"] = {{"dt_ps", h},
                   {"scheme", to_string(cfg.sim.scheme)},
                   {"engine", cfg.sim.engine == Engine::volterra ? "volterra" : "monte-carlo"}};
    if (cfg.sim.engine == Engine::monte_carlo) meta["sim"]["n_traj"] = cfg.sim.n_traj;
    meta["seed"] = cfg.seed;
    out.file.meta = meta;
    out.csv_path = (fs::path(cfg.out_dir) / "trace.csv").string();
    write_trace_file(out.csv_path, out.file);
    return out;
}

namespace {

struct IdentifyState {
    json report;
    std::string report_path;
};

SpectrumEstimate identify_coherent(const RunConfig& cfg, Method method, const TraceFile& in, IdentifyState& st) {
    const MeasurementTrace& trace = in.trace;
    if (trace.meta != Scenario::coherent_oscillation)
        throw InvalidArgument("identify: method needs a coherent_oscillation trace, got " + to_string(trace.meta));
    if (in.meta.contains("qubit") && in.meta["qubit"].contains("theta_rad")) {
        const double th = in.meta["qubit"]["theta_rad"].get<double>();
        if (std::abs(th - std::numbers::pi / 2) > 1e-9)
            st.report["warnings"].push_back("trace metadata says theta = " + fmt(th) + " rad; the inversion assumes pi/2");
    }
    const MeasurementTrace ac = detrend(trace, cfg.identify.detrend);
    const double sigma = cfg.identify.damping_per_t / trace.T;
    if (!(sigma >= 0.0)) throw InvalidArgument("identify: damping_per_t must be >= 0");
    const std::vector<double> grid = band_grid(trace, cfg.identify);
    const DiscreteLaplace dl = discrete_laplace(ac, grid, sigma);
    st.report["truncation_residual"] = dl.truncation_residual;
    st.report["damping_per_ps"] = sigma;
    for (const auto& w : dl.warnings) st.report["warnings"].push_back(w);

    double delta = 0.0;
    if (cfg.identify.delta_ghz) {
        delta = units::ghz_to_rad_per_ps(*cfg.identify.delta_ghz);
        if (!(delta > 0.0)) throw InvalidArgument("identify: --delta-ghz must be > 0");
        st.report["delta_source"] = "user";
    } else {
        const DeltaEstimate d = detect_delta(dl, trace.T);
        delta = d.delta;
        st.report["delta_source"] = "detected";
        st.report["delta_bin_width_rad_per_ps"] = d.bin_width;
    }
    st.report["delta_hat_rad_per_ps"] = delta;
    st.report["delta_hat_ghz"] = units::rad_per_ps_to_ghz(delta);

    const ChargeQubitParams p = params_from_gap(delta, std::numbers::pi / 2);
    const double thr = cfg.identify.mask_threshold;
    SpectrumEstimate est;
    switch (method) {
    case Method::eq19_complex:
    case Method::eq20_ft:
        est = identify_gamma_complex(add_dc(dl, 0.5), p, thr);
        est.method = method;
        break;
    case Method::eq21_ac_paper:
    case Method::ac_exact_derived: {
        const SpectrumEstimate exact = identify_gamma_ft_ac(dl, p, AcVariant::exact, thr);
        const SpectrumEstimate printed = identify_gamma_ft_ac(dl, p, AcVariant::paper_eq21, thr);
        est = method == Method::ac_exact_derived ? exact : printed;
        const std::string audit = (fs::path(cfg.out_dir) / "eq21_audit.csv").string();
        std::ofstream out = open_out(audit);
        out << "omega_rad_per_ps,gamma_ft_exact,gamma_ft_eq21,difference\n";
        double worst = 0.0;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double d = printed.gamma_ft[j] - exact.gamma_ft[j];
            if (std::isfinite(d)) worst = std::max(worst, std::abs(d));
            out << fmt(grid[j]) << ',' << fmt(exact.gamma_ft[j]) << ',' << fmt(printed.gamma_ft[j]) << ',' << fmt(d) << '\n';
        }
        close_out(out, audit);
        st.report["eq21_max_abs_discrepancy"] = worst;
        break;
    }
    default: break;
    }
    return est;
}

SpectrumEstimate identify_relaxation(const RunConfig& cfg, const std::vector<TraceFile>& inputs, IdentifyState& st) {
    const TraceFile* up = nullptr;
    const TraceFile* down = nullptr;
    for (const auto& f : inputs) {
        if (f.trace.meta == Scenario::relaxation_up) up = &f;
        if (f.trace.meta == Scenario::relaxation_down) down = &f;
    }
    if (inputs.size() != 2 || !up || !down)
        throw InvalidArgument("identify: relaxation needs one relaxation_up and one relaxation_down trace");
    if (up->trace.values.size() != down->trace.values.size() || std::abs(up->trace.dt - down->trace.dt) > 1e-9 * up->trace.dt)
        throw InvalidArgument("identify: relaxation traces must share the sampling grid");
    const MeasurementTrace ru = rate_trace(up->trace), rd = rate_trace(down->trace);
    const double sigma = cfg.identify.damping_per_t / ru.T;
    const std::vector<double> grid = band_grid(ru, cfg.identify);
    const DiscreteLaplace lu = discrete_laplace(ru, grid, sigma), ld = discrete_laplace(rd, grid, sigma);
    st.report["truncation_residual"] = std::max(lu.truncation_residual, ld.truncation_residual);
    st.report["damping_per_ps"] = sigma;
    for (const auto& w : lu.warnings) st.report["warnings"].push_back("relaxation_up: " + w);
    for (const auto& w : ld.warnings) st.report["warnings"].push_back("relaxation_down: " + w);
    st.report["delta_source"] = "none";

    const RelaxationEstimate r =
        identify_from_relaxation(SampledTransform::from(lu), SampledTransform::from(ld), cfg.identify.mask_threshold);
    SpectrumEstimate est;
    est.method = Method::relaxation_pair;
    est.omegas = grid;
    const std::string side = (fs::path(cfg.out_dir) / "relaxation.csv").string();
    std::ofstream out = open_out(side);
    out << "omega_rad_per_ps,gamma_plus_re,gamma_plus_im,omega_minus_re,omega_minus_im,masked_plus,masked_minus\n";
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const cplx s = r.s[j];
        est.gamma_ft.push_back(r.masked_plus[j] ? nan : 2.0 * r.gamma_plus[j].real());
        est.masked.push_back(r.masked_plus[j]);
        est.denominator_abs.push_back(std::abs(2.0 - (lu.values[j] + ld.values[j])));
        out << fmt(s.imag()) << ',' << fmt(r.gamma_plus[j].real()) << ',' << fmt(r.gamma_plus[j].imag()) << ','
            << fmt(r.omega_minus[j].real()) << ',' << fmt(r.omega_minus[j].imag()) << ',' << (r.masked_plus[j] ? 1 : 0) << ','
            << (r.masked_minus[j] ? 1 : 0) << '\n';
    }
    close_out(out, side);
    return est;
}

} // namespace

IdentifyOutput run_identify(const RunConfig& cfg) {
    const Method method = method_from_flag(cfg.identify.method);
    if (method == Method::golden_rule_sweep) {
        const GoldenRuleOutput g = run_golden_rule(cfg);
        IdentifyOutput out;
        out.report = g.report;
        out.spectrum.method = method;
        for (std::size_t i = 0; i < g.samples.size(); ++i) {
            out.spectrum.omegas.push_back(g.samples[i].omega);
            out.spectrum.gamma_ft.push_back(g.samples[i].phi_ft);
            out.spectrum.masked.push_back(false);
            out.spectrum.denominator_abs.push_back(std::pow(std::sin(g.samples[i].theta), 2));
        }
        out.report_path = (fs::path(cfg.out_dir) / "golden_rule.json").string();
        return out;
    }
    if (cfg.inputs.empty()) throw InvalidArgument("identify: no input trace (use --input)");

    IdentifyState st;
    st.report_path = (fs::path(cfg.out_dir) / "report.json").string();
    st.report["method"] = to_string(method);
    st.report["warnings"] = json::array();
    st.report["inputs"] = cfg.inputs;

    std::vector<TraceFile> inputs;
    for (const auto& path : cfg.inputs) inputs.push_back(read_trace_file(path));

    IdentifyOutput out;
    out.report_path = st.report_path;
    out.spectrum_path = (fs::path(cfg.out_dir) / "spectrum.csv").string();
    try {
        if (method == Method::relaxation_pair) {
            out.spectrum = identify_relaxation(cfg, inputs, st);
        } else {
            if (inputs.size() != 1) throw InvalidArgument("identify: " + cfg.identify.method + " takes exactly one trace");
            out.spectrum = identify_coherent(cfg, method, inputs.front(), st);
        }
    } catch (const IoError&) {
        throw;
    } catch (const Error& e) {
        st.report["status"] = "error";
        st.report["error"] = error_json(e);
        write_json(st.report_path, st.report);
        throw;
    }
    st.report["status"] = "ok";
    st.report["n_bins"] = out.spectrum.omegas.size();
    st.report["masked_count"] = out.spectrum.masked_count();
    write_spectrum_csv(out.spectrum_path, out.spectrum);
    write_json(st.report_path, st.report);
    out.report = st.report;
    return out;
}

GoldenRuleOutput run_golden_rule(const RunConfig& cfg) {
    const ChargeQubitParams base = cfg.qubit.params();
    const double EJ = base.EJ;
    std::vector<GoldenRuleMeasurement> meas;
    GoldenRuleOutput out;
    json src;
    if (!cfg.inputs.empty()) {
        if (cfg.inputs.size() != 1) throw InvalidArgument("golden-rule: takes at most one rates file");
        std::vector<std::string> header;
        const auto rows = read_csv(cfg.inputs.front(), {"theta_rad", "rate_up_per_ps", "rate_down_per_ps"}, header);
        for (const auto& r : rows) meas.push_back({r[0], r[1], r[2]});
        src = cfg.inputs.front();
    } else {
        for (double deg : cfg.golden_rule.thetas_deg) {
            const double th = deg * std::numbers::pi / 180.0;
            if (!(th > 0.0 && th < std::numbers::pi)) throw InvalidArgument("golden-rule: bias angles must lie in (0, 180) degrees");
            const ChargeQubitParams p = params_from_bias(EJ, EJ / std::tan(th));
            const SystemSpec sys = make_system(p, Frame::eigen_basis, InitialState::excited, cfg.noise.spectra());
            const StationaryRates r = stationary_rates(sys);
            meas.push_back({p.theta, r.up, r.down});
        }
        src = "model";
    }
    out.samples = golden_rule_sweep(meas, EJ);
    const bool synth = cfg.inputs.empty();
    double worst = 0.0;
    const std::string csv = (fs::path(cfg.out_dir) / "golden_rule.csv").string();
    std::ofstream f = open_out(csv);
    f << "theta_rad,omega_rad_per_ps,frequency_ghz,phi_ft" << (synth ? ",phi_ft_model,relative_error" : "") << '\n';
    for (const auto& s : out.samples) {
        const double model = synth ? cfg.noise.phi_ft(s.omega) : nan;
        out.model_phi.push_back(model);
        f << fmt(s.theta) << ',' << fmt(s.omega) << ',' << fmt(units::rad_per_ps_to_ghz(s.omega)) << ',' << fmt(s.phi_ft);
        if (synth) {
            const double rel = model != 0.0 ? std::abs(s.phi_ft / model - 1.0) : std::abs(s.phi_ft);
            worst = std::max(worst, rel);
            f << ',' << fmt(model) << ',' << fmt(rel);
        }
        f << '\n';
    }
    close_out(f, csv);
    out.report["method"] = to_string(Method::golden_rule_sweep);
    out.report["source"] = src;
    out.report["n_samples"] = out.samples.size();
    out.report["ej_rad_per_ps"] = EJ;
    if (synth) out.report["max_relative_error"] = worst;
    out.report["status"] = "ok";
    write_json((fs::path(cfg.out_dir) / "golden_rule.json").string(), out.report);
    return out;
}

} // namespace qnoise

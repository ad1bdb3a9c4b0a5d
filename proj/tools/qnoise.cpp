// qnoise - simulate coherent-oscillation traces and identify the noise spectrum behind them

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "qnoise/pipeline.hpp"
#include "qnoise/units.hpp"
#include "qnoise/validation.hpp"

using namespace qnoise;

namespace {

enum Exit { ok = 0, failed_checks = 1, usage = 2, numerical = 3, io = 4 };

std::string one_line(std::string s) {
    for (char& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    return s;
}

int report(const char* kind, const std::string& msg, int code) {
    std::cerr << "error[" << kind << "]: " << one_line(msg) << '\n';
    return code;
}

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    // simulate
    std::optional<std::string> scenario;
    std::optional<int> shots;
    std::optional<double> noise_stddev;
    // identify / golden-rule
    std::vector<std::string> inputs;
    std::optional<std::string> method;
    std::optional<double> delta_ghz;
    std::optional<double> damping_per_t;
    // validate
    std::optional<std::string> suite;
    std::optional<std::size_t> n_traj;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "JSON run configuration")->check(CLI::ExistingFile);
    sub->add_option("--seed", f.seed, "random seed (overrides /seed)");
    sub->add_option("--out", f.out, "output directory (overrides /io/out_dir)");
}

RunConfig resolve(Command cmd, const Flags& f) {
    RunConfig cfg = f.config.empty() ? config_from_json(json::object()) : load_config(f.config);
    cfg.command = cmd;
    if (f.seed) cfg.seed = *f.seed;
    if (f.out) cfg.out_dir = *f.out;
    if (f.scenario) cfg.scenario = scenario_from_string(*f.scenario);
    if (f.shots) cfg.acquisition.shots_per_point = *f.shots;
    if (f.noise_stddev) cfg.acquisition.measurement_noise_stddev = *f.noise_stddev;
    if (!f.inputs.empty()) cfg.inputs = f.inputs;
    if (f.method) cfg.identify.method = *f.method;
    if (f.delta_ghz) cfg.identify.delta_ghz = *f.delta_ghz;
    if (f.damping_per_t) cfg.identify.damping_per_t = *f.damping_per_t;
    if (f.suite) cfg.validate.suite = *f.suite;
    if (f.n_traj) cfg.validate.n_traj = *f.n_traj;
    cfg.acquisition.validate();
    return cfg;
}

int run(Command cmd, const Flags& f) {
    const RunConfig cfg = resolve(cmd, f);
    switch (cmd) {
    case Command::simulate: {
        const SimulateOutput o = run_simulate(cfg);
        std::cout << "wrote " << o.csv_path << " (" << o.file.trace.values.size() << " samples, scenario "
                  << to_string(cfg.scenario) << ")\n";
        return ok;
    }
    case Command::identify: {
        const IdentifyOutput o = run_identify(cfg);
        std::cout << o.report.dump() << '\n';
        return ok;
    }
    case Command::golden_rule: {
        const GoldenRuleOutput o = run_golden_rule(cfg);
        std::cout << o.report.dump() << '\n';
        return ok;
    }
    case Command::validate: {
        const std::vector<SuiteResult> res = run_validate(cfg);
        bool all = true;
        for (const auto& r : res) {
            for (const auto& c : r.checks) {
                std::printf("%s %s: %s measured %s tolerance %s\n", c.pass ? "PASS" : "FAIL", r.suite.c_str(), c.name.c_str(),
                            fmt(c.measured).c_str(), fmt(c.tolerance).c_str());
                if (!c.pass && !c.detail.empty()) std::printf("  %s\n", c.detail.c_str());
            }
            all = all && r.pass();
        }
        return all ? ok : failed_checks;
    }
    }
    return usage;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"noise spectroscopy for charge qubits: simulate traces, identify spectra, validate"};
    app.require_subcommand(1);
    Flags f;

    auto* sim = app.add_subcommand("simulate", "synthesize a measured trace");
    add_common(sim, f);
    sim->add_option("--scenario", f.scenario, "coherent_oscillation | relaxation_up | relaxation_down");
    sim->add_option("--shots", f.shots, "binomial shots per point (replaces Gaussian noise)");
    sim->add_option("--noise-stddev", f.noise_stddev, "Gaussian measurement noise stddev");

    auto* idf = app.add_subcommand("identify", "recover the noise spectrum from trace files");
    add_common(idf, f);
    idf->add_option("--input", f.inputs, "trace CSV (repeat for relaxation: up and down)");
    idf->add_option("--method", f.method, "eq19 | eq20 | eq21 | ac-exact | relaxation | golden-rule")
        ->check(CLI::IsMember({"eq19", "eq20", "eq21", "ac-exact", "relaxation", "golden-rule"}));
    idf->add_option("--delta-ghz", f.delta_ghz, "qubit frequency in GHz, skips detection");
    idf->add_option("--damping-per-t", f.damping_per_t, "Laplace damping sigma in units of 1/T");

    auto* gr = app.add_subcommand("golden-rule", "spectrum samples from stationary rates over bias angles");
    add_common(gr, f);
    gr->add_option("--input", f.inputs, "rates CSV theta_rad,rate_up_per_ps,rate_down_per_ps");

    auto* val = app.add_subcommand("validate", "run a cross-check suite");
    add_common(val, f);
    val->add_option("--suite", f.suite, "suite name or all");
    val->add_option("--n-traj", f.n_traj, "trajectories for mc-born");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report("usage", e.what(), usage);
    }

    Command cmd = Command::simulate;
    if (*idf) cmd = Command::identify;
    if (*gr) cmd = Command::golden_rule;
    if (*val) cmd = Command::validate;

    try {
        return run(cmd, f);
    } catch (const IoError& e) {
        return report("io", e.what(), io);
    } catch (const InvalidArgument& e) {
        return report("usage", e.what(), usage);
    } catch (const DetectionError& e) {
        return report("detection", e.what(), numerical);
    } catch (const PoleError& e) {
        return report("pole", e.what(), numerical);
    } catch (const ConvergenceError& e) {
        return report("convergence", e.what(), numerical);
    } catch (const SingularEvaluation& e) {
        return report("singular", e.what(), numerical);
    } catch (const std::exception& e) {
        return report("numerical", e.what(), numerical);
    }
}

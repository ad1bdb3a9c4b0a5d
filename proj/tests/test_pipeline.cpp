#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qnoise/error.hpp"
#include "qnoise/parallel.hpp"
#include "qnoise/pipeline.hpp"
#include "qnoise/units.hpp"
#include "qnoise/validation.hpp"

using namespace qnoise;
namespace fs = std::filesystem;

namespace {

std::string tmp(const std::string& name) {
    const fs::path p = fs::path(QNOISE_TEST_TMP) / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json base_config(const std::string& out) {
    return json{{"command", "simulate"},
                {"seed", 3},
                {"qubit", {{"ej_ghz", 6.0}, {"eel_ghz", 0.0}}},
                {"noise", {{"kind", "none"}}},
                {"acquisition", {{"dt_ps", 9.0}, {"T_ps", 2900.0}, {"measurement_noise_stddev", 0.0}}},
                {"io", {{"out_dir", out}}}};
}

std::string config_error(const json& j) {
    try {
        config_from_json(j);
    } catch (const InvalidArgument& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("GHz to rad/ps") {
    CHECK(units::ghz_to_rad_per_ps(6.0) == doctest::Approx(0.0377).epsilon(1e-3));
    CHECK(units::ghz_to_rad_per_ps(6.0) == doctest::Approx(0.03769911184307752).epsilon(1e-15));
    CHECK(units::rad_per_ps_to_ghz(units::ghz_to_rad_per_ps(4.2)) == doctest::Approx(4.2).epsilon(1e-15));
    const RunConfig c = config_from_json(base_config("x"));
    CHECK(c.qubit.params().delta == doctest::Approx(0.03769911184307752).epsilon(1e-15));
}

TEST_CASE("config parsing and errors") {
    json j = base_config("x");
    j["noise"] = {{"kind", "lorentzian"}, {"g2", 1e-5}, {"tau_c", 5.0}};
    const RunConfig c = config_from_json(j);
    CHECK(c.noise.kind() == NoiseKind::lorentzian);
    CHECK(c.acquisition.dt == 9.0);
    CHECK(c.seed == 3);

    j["noise"]["bogus"] = 1;
    CHECK(config_error(j).find("/noise/bogus") != std::string::npos);
    j["noise"].erase("bogus");
    j["noise"]["tau_c"] = -1.0;
    CHECK(config_error(j).find("/noise") != std::string::npos);
    j["noise"]["tau_c"] = "five";
    CHECK(config_error(j).find("/noise/tau_c") != std::string::npos);
    j = base_config("x");
    j["acquisition"]["dt_ps"] = 0.0;
    CHECK(config_error(j).find("/acquisition") != std::string::npos);
    j = base_config("x");
    j["sim"] = {{"engine", "warp"}};
    CHECK(config_error(j).find("/sim/engine") != std::string::npos);
    CHECK(config_error(json{{"extra", 1}}).find("/extra") != std::string::npos);

    const std::string dir = tmp("config");
    const std::string bad = dir + "/bad.json";
    std::ofstream(bad) << "{\n  \"seed\": 1,\n  \"qubit\": {\"ej_ghz\": 6,, }\n}\n";
    try {
        load_config(bad);
        FAIL("expected a parse error");
    } catch (const InvalidArgument& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(load_config(dir + "/missing.json"), IoError);

    // noise round trip through JSON
    const NoiseModel m = NoiseModel::lorentzian_sum({{0.01, 2.0}, {0.003, 0.5}}).with_omega({0.001, 1.0, 0.3});
    const NoiseModel back = noise_from_json(noise_to_json(m));
    CHECK(std::abs(back.laplace_at(cplx(0.2, 0.7)).gamma - m.laplace_at(cplx(0.2, 0.7)).gamma) < 1e-16);
    CHECK(std::abs(back.laplace_at(cplx(0.2, 0.7)).omega - m.laplace_at(cplx(0.2, 0.7)).omega) < 1e-16);
}

TEST_CASE("simulate: zero noise reproduces free evolution") {
    const std::string out = tmp("sim_free");
    const SimulateOutput o = run_simulate(config_from_json(base_config(out)));
    const double D = units::ghz_to_rad_per_ps(6.0);
    REQUIRE(o.file.trace.values.size() == 323);
    for (std::size_t k = 0; k < o.file.trace.values.size(); ++k)
        CHECK(std::abs(o.file.trace.values[k] - 0.5 * (1 - std::cos(D * o.file.trace.times[k]))) <= 1e-6);
    CHECK(fs::exists(out + "/trace.csv"));
    CHECK(fs::exists(out + "/trace.json"));
    const TraceFile back = read_trace_file(out + "/trace.csv");
    CHECK(back.trace.values == o.file.trace.values);
    CHECK(back.trace.dt == doctest::Approx(9.0));
    CHECK(back.meta.at("scenario") == "coherent_oscillation");
    CHECK_THROWS_AS(read_trace_file(out + "/nope.csv"), IoError);
}

TEST_CASE("simulate: binomial shots") {
    json j = base_config(tmp("sim_shots"));
    j["acquisition"]["shots_per_point"] = 400;
    const SimulateOutput o = run_simulate(config_from_json(j));
    double z2 = 0.0;
    int n = 0;
    for (std::size_t k = 0; k < o.clean_q.size(); ++k) {
        const double q = o.clean_q[k];
        const double var = q * (1 - q) / 400.0;
        if (var < 1e-4) continue;
        const double d = o.file.trace.values[k] - q;
        z2 += d * d / var;
        ++n;
        CHECK(std::abs(d) <= 5.0 * std::sqrt(var));
        CHECK(std::abs(o.file.trace.values[k] * 400.0 - std::round(o.file.trace.values[k] * 400.0)) < 1e-9);
    }
    REQUIRE(n > 100);
    CHECK(z2 / n == doctest::Approx(1.0).epsilon(0.25));
}

TEST_CASE("simulate: same seed gives byte-identical files, any worker count") {
    json j = base_config(tmp("rerun_a"));
    j["noise"] = {{"kind", "lorentzian"}, {"g2", 1.4e-5}, {"tau_c", 5.3}};
    j["acquisition"]["measurement_noise_stddev"] = 0.02;
    run_simulate(config_from_json(j));
    const std::string a = j["io"]["out_dir"];
    j["io"]["out_dir"] = tmp("rerun_b");
    run_simulate(config_from_json(j));
    const std::string b = j["io"]["out_dir"];
    CHECK(slurp(a + "/trace.csv") == slurp(b + "/trace.csv"));
    CHECK(slurp(a + "/trace.json") == slurp(b + "/trace.json"));

    j["sim"] = {{"engine", "monte-carlo"}, {"n_traj", 40}};
    j["acquisition"]["T_ps"] = 900.0;
    j["io"]["out_dir"] = tmp("mc_a");
    set_worker_count(1);
    run_simulate(config_from_json(j));
    j["io"]["out_dir"] = tmp("mc_b");
    set_worker_count(3);
    run_simulate(config_from_json(j));
    set_worker_count(0);
    const std::string x = slurp(fs::path(QNOISE_TEST_TMP) / "mc_a/trace.csv");
    CHECK(x.find("q_stderr") != std::string::npos);
    CHECK(x == slurp(fs::path(QNOISE_TEST_TMP) / "mc_b/trace.csv"));
}

TEST_CASE("identify: round trip, user Delta, truncation warning") {
    // coarse but decayed record of a 6 GHz qubit under Lorentzian noise
    const double D = units::ghz_to_rad_per_ps(6.0);
    const std::string sim = tmp("rt_sim");
    json j = base_config(sim);
    j["noise"] = {{"kind", "lorentzian"}, {"g2", 0.01 * D * D}, {"tau_c", 0.2 / D}};
    j["acquisition"]["dt_ps"] = 3.0;
    j["acquisition"]["T_ps"] = 12000.0 / D;
    run_simulate(config_from_json(j));

    json k = base_config(tmp("rt_id"));
    k["command"] = "identify";
    k["noise"] = {{"kind", "none"}};
    k["identify"] = {{"method", "ac-exact"}, {"band_lo_ghz", 3.0}, {"band_hi_ghz", 9.0}};
    k["io"]["inputs"] = {sim + "/trace.csv"};
    const IdentifyOutput o = run_identify(config_from_json(k));
    CHECK(o.report.at("status") == "ok");
    CHECK(o.report.at("delta_source") == "detected");
    CHECK(std::abs(o.report.at("delta_hat_rad_per_ps").get<double>() - D) <= 2 * std::numbers::pi / (12000.0 / D));
    const NoiseModel truth = NoiseModel::lorentzian(0.01 * D * D, 0.2 / D);
    int used = 0;
    for (std::size_t i = 0; i < o.spectrum.omegas.size(); ++i) {
        const double w = o.spectrum.omegas[i];
        if (o.spectrum.masked[i] || w < 0.5 * D || w > 1.5 * D) continue;
        const double g = truth.fourier_spectrum_at(w).gamma_ft;
        CHECK(std::abs(o.spectrum.gamma_ft[i] - g) <= 0.10 * g);
        ++used;
    }
    CHECK(used > 10);
    CHECK(fs::exists(o.spectrum_path));
    CHECK(fs::exists(o.report_path));
    CHECK(fs::exists(fs::path(o.report_path).parent_path() / "eq21_audit.csv"));

    k["identify"]["delta_ghz"] = 6.0;
    k["identify"]["method"] = "eq19";
    const IdentifyOutput u = run_identify(config_from_json(k));
    CHECK(u.report.at("delta_source") == "user");

    // record cut off at 20% of the initial amplitude
    const std::string cut = tmp("rt_cut");
    std::vector<double> q;
    const double T = 2900.0, tau = T / std::log(5.0);
    for (int n = 0; n <= 2900; ++n) q.push_back(0.5 * (1 - std::exp(-n / tau) * std::cos(D * n)));
    TraceFile tf;
    tf.trace = MeasurementTrace::uniform(q, 1.0, Scenario::coherent_oscillation);
    tf.meta = json{{"scenario", "coherent_oscillation"}};
    write_trace_file(cut + "/trace.csv", tf);
    k["io"]["inputs"] = {cut + "/trace.csv"};
    k["io"]["out_dir"] = cut;
    const IdentifyOutput w = run_identify(config_from_json(k));
    CHECK(w.report.at("status") == "ok");
    CHECK(w.report.at("truncation_residual").get<double>() == doctest::Approx(0.2).epsilon(0.05));
    CHECK(w.report.at("warnings").size() >= 1);
    CHECK(w.spectrum.omegas.size() > 0);
}

TEST_CASE("identify: detection failure keeps the report") {
    const std::string dir = tmp("dc");
    TraceFile tf;
    tf.trace = MeasurementTrace::uniform(std::vector<double>(400, 0.5), 9.0, Scenario::coherent_oscillation);
    tf.meta = json{{"scenario", "coherent_oscillation"}};
    write_trace_file(dir + "/trace.csv", tf);
    json k = base_config(dir);
    k["command"] = "identify";
    k["io"]["inputs"] = {dir + "/trace.csv"};
    CHECK_THROWS_AS(run_identify(config_from_json(k)), DetectionError);
    const json rep = json::parse(slurp(dir + "/report.json"));
    CHECK(rep.at("status") == "error");
    CHECK(rep.at("error").at("kind") == "detection");
}

TEST_CASE("validate suites") {
    SuiteParams sp;
    for (const char* name : {"closed-form-equivalence", "golden-rule", "free-evolution", "relaxation-inversion", "symmetry"}) {
        CAPTURE(name);
        const auto r = run_suites(name, sp);
        REQUIRE(r.size() == 1);
        CHECK(r[0].pass());
        CHECK(r[0].to_json().at("suite") == name);
    }
    sp.n_traj = 100;
    const auto mc = run_suites("mc-born", sp);
    REQUIRE(mc.size() == 1);
    CHECK_FALSE(mc[0].pass());
    bool explained = false;
    for (const Check& c : mc[0].checks) explained = explained || c.detail.find("stderr-dominated") != std::string::npos;
    CHECK(explained);
    CHECK_THROWS_AS(run_suites("nope", sp), InvalidArgument);
}

TEST_CASE("golden-rule command from a rates file") {
    const std::string dir = tmp("gr");
    std::ofstream(dir + "/rates.csv") << "theta_rad,rate_up_per_ps,rate_down_per_ps\n1.5707963267948966,0.002,0.003\n"
                                         "1.0471975511965976,0.0015,0.00225\n";
    json j = base_config(dir);
    j["command"] = "golden-rule";
    j["io"]["inputs"] = {dir + "/rates.csv"};
    const GoldenRuleOutput g = run_golden_rule(config_from_json(j));
    REQUIRE(g.samples.size() == 4);
    CHECK(g.samples[0].phi_ft == doctest::Approx(0.003));
    CHECK(g.samples[2].phi_ft == doctest::Approx(0.003));
    CHECK(fs::exists(dir + "/golden_rule.csv"));
}

// config.hpp - JSON run configuration for the command-line tool
//
// One JSON document; command-line flags override its keys. Every frequency a
// user types is in GHz (ordinary frequency) or rad/ps where the key says so,
// times are in ps. See docs/formats.md for the schema.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qnoise/identification.hpp"
#include "qnoise/time_sim.hpp"

namespace qnoise {

using json = nlohmann::json;

enum class Command { simulate, identify, golden_rule, validate };

std::string to_string(Command c);
Command command_from_string(const std::string& name);

enum class Engine { volterra, monte_carlo };

struct QubitSource {
    double ej_ghz = 6.0;
    std::optional<double> eel_ghz;
    std::optional<double> ng;
    std::optional<double> ec_ghz;

    ChargeQubitParams params() const;
};

struct Acquisition {
    double dt = 9.0;    // ps
    double T = 2900.0;  // ps
    double measurement_noise_stddev = 0.02;
    std::optional<int> shots_per_point;

    void validate() const;
};

struct SimSettings {
    std::optional<double> dt;          // ps; unset: largest divisor of the sampling step that resolves the dynamics
    std::optional<double> kernel_cut;  // ps
    Scheme scheme = Scheme::trapezoid_volterra;
    Engine engine = Engine::volterra;
    std::size_t n_traj = 10000;        // monte_carlo only
};

struct IdentifySettings {
    std::string method = "ac-exact";
    std::optional<double> delta_ghz;
    double damping_per_t = 0.0;        // sigma = damping_per_t / T
    Detrend detrend = Detrend::theoretical;
    std::optional<double> band_lo_ghz;
    std::optional<double> band_hi_ghz;
    double mask_threshold = 1e-12;
};

struct GoldenRuleSettings {
    std::vector<double> thetas_deg{90.0, 60.0, 45.0};
};

struct ValidateSettings {
    std::string suite = "all";
    std::size_t n_traj = 10000;
};

struct RunConfig {
    Command command = Command::simulate;
    Scenario scenario = Scenario::coherent_oscillation;
    QubitSource qubit;
    NoiseModel noise = NoiseModel::lorentzian(0.0, 1.0);
    Acquisition acquisition;
    SimSettings sim;
    IdentifySettings identify;
    GoldenRuleSettings golden_rule;
    ValidateSettings validate;
    std::vector<std::string> inputs;
    std::string out_dir = ".";
    std::uint64_t seed = 1;
};

// kind + parameters, e.g. {"kind": "lorentzian", "g2": 1e-5, "tau_c": 50,
// "units": {"frequency": "rad/ps", "time": "ps"}}
NoiseModel noise_from_json(const json& j);
json noise_to_json(const NoiseModel& m);

QubitSource qubit_from_json(const json& j);
json qubit_to_json(const QubitSource& q);

// Unknown keys are rejected; messages name the offending key path.
RunConfig config_from_json(const json& j);
// Parse errors report line and column.
RunConfig load_config(const std::string& path);

} // namespace qnoise

// validation.hpp - named cross-check suites with measured errors vs tolerances
#pragma once

#include <string>
#include <vector>

#include "qnoise/config.hpp"

namespace qnoise {

struct Check {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<Check> checks;
    double seconds = 0.0;

    bool pass() const;
    json to_json() const;
};

// Every suite works in units of the gap: couplings, correlation times and grids
// are expressed through delta (rad/ps), so delta = 1 is the dimensionless case.
struct SuiteParams {
    double delta = 1.0;
    std::size_t n_traj = 10000;
    std::uint64_t seed = 1;
};

const std::vector<std::string>& suite_names();

SuiteResult free_evolution_suite(const SuiteParams& sp);
SuiteResult closed_form_suite(const SuiteParams& sp);
SuiteResult golden_rule_suite(const SuiteParams& sp);
SuiteResult mc_born_suite(const SuiteParams& sp);
SuiteResult symmetry_suite(const SuiteParams& sp);
SuiteResult relaxation_inversion_suite(const SuiteParams& sp);
// Volterra trace -> transform -> eq19 / ac-exact, Lorentzian and white; also the eq21 audit.
SuiteResult identification_roundtrip_suite(const SuiteParams& sp);
// 6 GHz qubit sampled every 9 ps over 2900 ps, with and without 0.02 Gaussian noise.
SuiteResult delta_detection_suite(const SuiteParams& sp);

// Throws InvalidArgument for an unknown name; "all" runs every suite.
std::vector<SuiteResult> run_suites(const std::string& name, const SuiteParams& sp);

// Runs cfg.validate.suite, writes <out>/validate.json, returns the results.
std::vector<SuiteResult> run_validate(const RunConfig& cfg);

} // namespace qnoise

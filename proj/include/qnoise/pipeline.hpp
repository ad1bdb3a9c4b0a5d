// pipeline.hpp - file formats and the simulate / identify / golden-rule runs
#pragma once

#include <string>
#include <vector>

#include "qnoise/config.hpp"

namespace qnoise {

// CSV `time_ps,q_mean[,q_stderr]` plus a sidecar JSON next to it (same stem, .json).
// Without a sidecar the file is read as a coherent-oscillation trace.
struct TraceFile {
    MeasurementTrace trace;
    std::vector<double> q_stderr; // empty when the column is absent
    json meta;
};

std::string sidecar_path(const std::string& csv_path);
void write_trace_file(const std::string& csv_path, const TraceFile& file);
TraceFile read_trace_file(const std::string& csv_path);

// `time_ps,v0,v1,v2,v3,q`
void write_trajectory_csv(const std::string& path, const Trajectory& traj);
// `omega_rad_per_ps,gamma_ft,masked,denominator_abs,frequency_ghz[,bias_estimate]`
void write_spectrum_csv(const std::string& path, const SpectrumEstimate& est);
void write_json(const std::string& path, const json& j);

// Shortest round-trip decimal form, so reruns give identical bytes.
std::string fmt(double x);

struct SimulateOutput {
    TraceFile file;
    std::vector<double> clean_q; // before measurement noise
    std::string csv_path;
};

// Integrates the configured scenario on a step that divides the sampling step,
// samples it, adds measurement noise and writes <out>/trace.csv (+ trace.json).
SimulateOutput run_simulate(const RunConfig& cfg);

struct IdentifyOutput {
    SpectrumEstimate spectrum;
    json report;
    std::string spectrum_path;
    std::string report_path;
};

// Reads cfg.inputs, writes <out>/spectrum.csv and <out>/report.json. The report
// is written before any numerical error propagates, with the error recorded.
IdentifyOutput run_identify(const RunConfig& cfg);

struct GoldenRuleOutput {
    std::vector<SpectrumSample> samples;
    std::vector<double> model_phi; // NaN when the rates came from a file
    json report;
};

// Rates from cfg.inputs[0] (`theta_rad,rate_up_per_ps,rate_down_per_ps`) or, with no
// input, from the stationary rates of the configured model at each bias angle.
// Writes <out>/golden_rule.csv and <out>/golden_rule.json.
GoldenRuleOutput run_golden_rule(const RunConfig& cfg);

} // namespace qnoise

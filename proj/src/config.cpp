#include "qnoise/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "qnoise/units.hpp"

namespace qnoise {

std::string to_string(Command c) {
    switch (c) {
    case Command::simulate: return "simulate";
    case Command::identify: return "identify";
    case Command::golden_rule: return "golden-rule";
    case Command::validate: return "validate";
    }
    return "?";
}

Command command_from_string(const std::string& name) {
    for (Command c : {Command::simulate, Command::identify, Command::golden_rule, Command::validate})
        if (to_string(c) == name) return c;
    throw InvalidArgument("config: unknown command '" + name + "'");
}

namespace {

// Walks one JSON object, remembers its path for messages and which keys were read.
class Obj {
public:
    Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw InvalidArgument("config: " + where() + " must be an object");
    }

    bool has(const std::string& key) {
        seen_.insert(key);
        return j_.contains(key);
    }

    double num(const std::string& key) {
        const json& v = at(key);
        if (!v.is_number()) throw InvalidArgument("config: " + where(key) + " must be a number");
        return v.get<double>();
    }
    double num(const std::string& key, double fallback) { return has(key) ? num(key) : fallback; }
    std::optional<double> opt_num(const std::string& key) {
        if (!has(key) || at(key).is_null()) return std::nullopt;
        return num(key);
    }

    std::int64_t integer(const std::string& key) {
        const json& v = at(key);
        if (!v.is_number_integer()) throw InvalidArgument("config: " + where(key) + " must be an integer");
        return v.get<std::int64_t>();
    }

    std::string str(const std::string& key) {
        const json& v = at(key);
        if (!v.is_string()) throw InvalidArgument("config: " + where(key) + " must be a string");
        return v.get<std::string>();
    }
    std::string str(const std::string& key, const std::string& fallback) { return has(key) ? str(key) : fallback; }

    std::vector<double> nums(const std::string& key) {
        const json& v = at(key);
        if (!v.is_array()) throw InvalidArgument("config: " + where(key) + " must be an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number())
                throw InvalidArgument("config: " + where(key) + "[" + std::to_string(i) + "] must be a number");
            out.push_back(v[i].get<double>());
        }
        return out;
    }

    const json& at(const std::string& key) {
        seen_.insert(key);
        if (!j_.contains(key)) throw InvalidArgument("config: missing key " + where(key));
        return j_.at(key);
    }

    std::string where(const std::string& key = "") const {
        if (key.empty()) return path_.empty() ? "/" : path_;
        return path_ + "/" + key;
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key())) throw InvalidArgument("config: unknown key " + where(it.key()));
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

template <class F>
auto wrap(const std::string& where, F f) {
    try {
        return f();
    } catch (const Error& e) {
        if (std::string(e.what()).rfind("config:", 0) == 0) throw;
        throw InvalidArgument("config: " + where + ": " + e.what());
    }
}

void check_units(Obj& o) {
    if (!o.has("units")) return;
    Obj u(o.at("units"), o.where("units"));
    if (u.has("frequency") && u.str("frequency") != "rad/ps")
        throw InvalidArgument("config: " + u.where("frequency") + " must be \"rad/ps\"");
    if (u.has("time") && u.str("time") != "ps") throw InvalidArgument("config: " + u.where("time") + " must be \"ps\"");
    u.finish();
}

NoiseModel noise_at(const json& j, const std::string& path) {
    Obj o(j, path);
    check_units(o);
    const std::string kind = o.str("kind");
    NoiseModel m = wrap(o.where(), [&]() -> NoiseModel {
        if (kind == "none") return NoiseModel::lorentzian(0.0, 1.0);
        if (kind == "lorentzian") return NoiseModel::lorentzian(o.num("g2"), o.num("tau_c"));
        if (kind == "white") return NoiseModel::white(o.num("gamma_w"));
        if (kind == "ohmic") return NoiseModel::ohmic(o.num("eta"), o.num("omega_cut"));
        if (kind == "one_over_f")
            return NoiseModel::one_over_f(o.num("amplitude"), o.num("w_lo"), o.num("w_hi"),
                                          static_cast<int>(o.has("per_decade") ? o.integer("per_decade") : 4));
        if (kind == "lorentzian_sum") {
            const json& arr = o.at("terms");
            if (!arr.is_array()) throw InvalidArgument("config: " + o.where("terms") + " must be an array");
            std::vector<LorentzianTerm> terms;
            for (std::size_t i = 0; i < arr.size(); ++i) {
                Obj t(arr[i], o.where("terms") + "/" + std::to_string(i));
                terms.push_back({t.num("g2"), t.num("tau_c")});
                t.finish();
            }
            return NoiseModel::lorentzian_sum(terms);
        }
        if (kind == "tabulated") {
            std::vector<double> om;
            if (o.has("omega")) om = o.nums("omega");
            return NoiseModel::tabulated(o.nums("taus"), o.nums("gamma"), om);
        }
        throw InvalidArgument("config: " + o.where("kind") + ": unknown noise kind '" + kind + "'");
    });
    if (o.has("omega_model")) {
        Obj w(o.at("omega_model"), o.where("omega_model"));
        const DampedSineOmega om{w.num("a"), w.num("tau_c"), w.num("tau_r")};
        w.finish();
        m = wrap(w.where(), [&] { return m.with_omega(om); });
    }
    o.finish();
    return m;
}

QubitSource qubit_at(const json& j, const std::string& path) {
    Obj o(j, path);
    QubitSource q;
    q.ej_ghz = o.num("ej_ghz");
    q.eel_ghz = o.opt_num("eel_ghz");
    q.ng = o.opt_num("ng");
    q.ec_ghz = o.opt_num("ec_ghz");
    o.finish();
    if (q.eel_ghz && (q.ng || q.ec_ghz))
        throw InvalidArgument("config: " + o.where() + ": give either eel_ghz or ng + ec_ghz, not both");
    if (q.ng.has_value() != q.ec_ghz.has_value())
        throw InvalidArgument("config: " + o.where() + ": ng and ec_ghz go together");
    wrap(o.where(), [&] { return q.params(); });
    return q;
}

} // namespace

ChargeQubitParams QubitSource::params() const {
    const double EJ = units::ghz_to_rad_per_ps(ej_ghz);
    if (ng && ec_ghz) return params_from_gate(EJ, units::ghz_to_rad_per_ps(*ec_ghz), *ng);
    return params_from_bias(EJ, units::ghz_to_rad_per_ps(eel_ghz.value_or(0.0)));
}

void Acquisition::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("config: /acquisition/dt_ps must be > 0");
    if (!(T >= 16.0 * dt) || !std::isfinite(T)) throw InvalidArgument("config: /acquisition/T_ps must cover at least 16 samples");
    if (!(measurement_noise_stddev >= 0.0))
        throw InvalidArgument("config: /acquisition/measurement_noise_stddev must be >= 0");
    if (shots_per_point && *shots_per_point < 1)
        throw InvalidArgument("config: /acquisition/shots_per_point must be >= 1");
}

NoiseModel noise_from_json(const json& j) { return noise_at(j, "/noise"); }

json noise_to_json(const NoiseModel& m) {
    json j;
    j["units"] = {{"frequency", "rad/ps"}, {"time", "ps"}};
    switch (m.kind()) {
    case NoiseKind::lorentzian:
        j["kind"] = "lorentzian";
        j["g2"] = m.terms().front().g2;
        j["tau_c"] = m.terms().front().tau_c;
        break;
    case NoiseKind::lorentzian_sum: {
        j["kind"] = "lorentzian_sum";
        json terms = json::array();
        for (const auto& t : m.terms()) terms.push_back({{"g2", t.g2}, {"tau_c", t.tau_c}});
        j["terms"] = terms;
        break;
    }
    case NoiseKind::white:
        j["kind"] = "white";
        j["gamma_w"] = m.white_rate();
        break;
    case NoiseKind::ohmic:
        j["kind"] = "ohmic";
        j["eta"] = m.ohmic_eta();
        j["omega_cut"] = m.ohmic_cutoff();
        break;
    case NoiseKind::tabulated:
        j["kind"] = "tabulated";
        j["taus"] = m.table_taus();
        j["gamma"] = m.table_gamma();
        if (!m.table_omega().empty()) j["omega"] = m.table_omega();
        break;
    }
    if (m.has_omega()) {
        const auto& om = m.omega_spec();
        j["omega_model"] = {{"a", om.a}, {"tau_c", om.tau_c}, {"tau_r", om.tau_r}};
    }
    return j;
}

QubitSource qubit_from_json(const json& j) { return qubit_at(j, "/qubit"); }

json qubit_to_json(const QubitSource& q) {
    const ChargeQubitParams p = q.params();
    json j;
    j["ej_ghz"] = q.ej_ghz;
    if (q.eel_ghz) j["eel_ghz"] = *q.eel_ghz;
    if (q.ng) j["ng"] = *q.ng;
    if (q.ec_ghz) j["ec_ghz"] = *q.ec_ghz;
    j["delta_rad_per_ps"] = p.delta;
    j["delta_ghz"] = units::rad_per_ps_to_ghz(p.delta);
    j["theta_rad"] = p.theta;
    return j;
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    Obj o(j, "");
    if (o.has("command")) c.command = command_from_string(o.str("command"));
    if (o.has("scenario")) c.scenario = wrap("/scenario", [&] { return scenario_from_string(o.str("scenario")); });
    if (o.has("seed")) {
        const std::int64_t s = o.integer("seed");
        if (s < 0) throw InvalidArgument("config: /seed must be >= 0");
        c.seed = static_cast<std::uint64_t>(s);
    }
    if (o.has("qubit")) c.qubit = qubit_at(o.at("qubit"), "/qubit");
    if (o.has("noise")) c.noise = noise_at(o.at("noise"), "/noise");
    if (o.has("acquisition")) {
        Obj a(o.at("acquisition"), "/acquisition");
        c.acquisition.dt = a.num("dt_ps", c.acquisition.dt);
        c.acquisition.T = a.num("T_ps", c.acquisition.T);
        c.acquisition.measurement_noise_stddev = a.num("measurement_noise_stddev", c.acquisition.measurement_noise_stddev);
        if (a.has("shots_per_point") && !a.at("shots_per_point").is_null())
            c.acquisition.shots_per_point = static_cast<int>(a.integer("shots_per_point"));
        a.finish();
    }
    c.acquisition.validate();
    if (o.has("sim")) {
        Obj s(o.at("sim"), "/sim");
        c.sim.dt = s.opt_num("dt_ps");
        c.sim.kernel_cut = s.opt_num("kernel_cut_ps");
        if (s.has("scheme")) c.sim.scheme = wrap("/sim/scheme", [&] { return scheme_from_string(s.str("scheme")); });
        if (s.has("engine")) {
            const std::string e = s.str("engine");
            if (e == "volterra") c.sim.engine = Engine::volterra;
            else if (e == "monte-carlo") c.sim.engine = Engine::monte_carlo;
            else throw InvalidArgument("config: /sim/engine must be \"volterra\" or \"monte-carlo\"");
        }
        if (s.has("n_traj")) {
            const std::int64_t n = s.integer("n_traj");
            if (n < 2) throw InvalidArgument("config: /sim/n_traj must be >= 2");
            c.sim.n_traj = static_cast<std::size_t>(n);
        }
        s.finish();
    }
    if (o.has("identify")) {
        Obj s(o.at("identify"), "/identify");
        c.identify.method = s.str("method", c.identify.method);
        c.identify.delta_ghz = s.opt_num("delta_ghz");
        c.identify.damping_per_t = s.num("damping_per_t", 0.0);
        if (s.has("detrend")) {
            const std::string d = s.str("detrend");
            if (d == "theoretical") c.identify.detrend = Detrend::theoretical;
            else if (d == "empirical-mean") c.identify.detrend = Detrend::empirical_mean;
            else throw InvalidArgument("config: /identify/detrend must be \"theoretical\" or \"empirical-mean\"");
        }
        c.identify.band_lo_ghz = s.opt_num("band_lo_ghz");
        c.identify.band_hi_ghz = s.opt_num("band_hi_ghz");
        c.identify.mask_threshold = s.num("mask_threshold", c.identify.mask_threshold);
        s.finish();
    }
    if (o.has("golden_rule")) {
        Obj s(o.at("golden_rule"), "/golden_rule");
        if (s.has("thetas_deg")) c.golden_rule.thetas_deg = s.nums("thetas_deg");
        s.finish();
    }
    if (o.has("validate")) {
        Obj s(o.at("validate"), "/validate");
        c.validate.suite = s.str("suite", c.validate.suite);
        if (s.has("n_traj")) {
            const std::int64_t n = s.integer("n_traj");
            if (n < 2) throw InvalidArgument("config: /validate/n_traj must be >= 2");
            c.validate.n_traj = static_cast<std::size_t>(n);
        }
        s.finish();
    }
    if (o.has("io")) {
        Obj s(o.at("io"), "/io");
        if (s.has("inputs")) {
            const json& arr = s.at("inputs");
            if (!arr.is_array()) throw InvalidArgument("config: /io/inputs must be an array of paths");
            for (const auto& x : arr) {
                if (!x.is_string()) throw InvalidArgument("config: /io/inputs must be an array of paths");
                c.inputs.push_back(x.get<std::string>());
            }
        }
        c.out_dir = s.str("out_dir", c.out_dir);
        s.finish();
    }
    o.finish();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("config: cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        // e.what() already carries "at line L, column C"
        throw InvalidArgument(path + ": " + e.what());
    }
    try {
        return config_from_json(j);
    } catch (const InvalidArgument& e) {
        throw InvalidArgument(path + ": " + e.what());
    }
}

} // namespace qnoise

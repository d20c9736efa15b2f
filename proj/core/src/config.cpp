#include "paritysim/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace paritysim::config {

using nlohmann::json;

namespace {

std::string join(const std::string& a, const std::string& b) {
    return a.empty() ? b : a + "." + b;
}

const json& require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path, "expected an object");
    return j;
}

const json& require_key(const json& j, const std::string& path, const std::string& key) {
    require_object(j, path);
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(join(path, key), "required field is missing");
    return *it;
}

double require_number(const json& j, const std::string& path, const std::string& key) {
    const json& v = require_key(j, path, key);
    if (!v.is_number()) throw ConfigError(join(path, key), "expected a number");
    return v.get<double>();
}

int require_int(const json& j, const std::string& path, const std::string& key) {
    const json& v = require_key(j, path, key);
    if (!v.is_number_integer()) throw ConfigError(join(path, key), "expected an integer");
    return v.get<int>();
}

std::string require_string(const json& j, const std::string& path, const std::string& key) {
    const json& v = require_key(j, path, key);
    if (!v.is_string()) throw ConfigError(join(path, key), "expected a string");
    return v.get<std::string>();
}

void reject_unknown(const json& j, const std::string& path, const std::set<std::string>& allowed) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError(join(path, it.key()), "unknown field (strict mode)");
}

double optional_number(const json& j, const std::string& path, const std::string& key,
                       double fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) throw ConfigError(join(path, key), "expected a number");
    return v.get<double>();
}

AxisSpec parse_axis(const json& j, const std::string& path) {
    reject_unknown(j, path, {"name", "start", "stop", "points"});
    AxisSpec a;
    a.name = require_string(j, path, "name");
    a.start = require_number(j, path, "start");
    a.stop = require_number(j, path, "stop");
    a.points = require_int(j, path, "points");
    if (a.points < 2) throw ConfigError(join(path, "points"), "axis needs at least 2 points");
    if (a.start == a.stop) throw ConfigError(join(path, "start"), "axis start must differ from stop");
    return a;
}

} // namespace

std::vector<double> AxisSpec::linspace() const {
    std::vector<double> v(points);
    const double step = (stop - start) / double(points - 1);
    for (int i = 0; i < points; ++i) v[i] = start + double(i) * step;
    v.back() = stop;
    return v;
}

json default_config_json() {
    return json{
        {"system",
         {{"qubit", {{"gap_hz", 8.2e9}, {"bias_hz", 0.0}}},
          {"resonator",
           {{"frequency_hz", 3.88e9},
            {"kappa_external_hz", 2.43e6},
            {"kappa_internal_hz", 7.0e4},
            {"n_max", 8}}},
          {"coupling", {{"g_transversal_hz", 4.0e7}, {"g_longitudinal_hz", 0.0}}},
          {"decoherence", {{"t1_s", 2.6e-6}, {"t2_s", 1.0e-7}}}}},
        {"drive",
         {{"frequency_hz", 8.2e9},
          {"phase_rad", 0.0},
          {"amplitude_hz", 1.0e7},
          {"imbalance_db", 0.0},
          {"residual_leakage", 0.0},
          {"temperature_k", 0.125}}},
    };
}

RunConfig parse_config(const json& doc) {
    require_object(doc, "");
    reject_unknown(doc, "",
                   {"system", "drive", "sweep", "engine", "propagation", "map", "calibrate",
                    "output"});

    RunConfig cfg;

    const json& system = require_key(doc, "", "system");
    reject_unknown(system, "system", {"qubit", "resonator", "coupling", "decoherence"});

    {
        const json& q = require_key(system, "system", "qubit");
        reject_unknown(q, "system.qubit", {"gap_hz", "bias_hz"});
        cfg.qubit.gap = two_pi * require_number(q, "system.qubit", "gap_hz");
        cfg.qubit.bias = two_pi * require_number(q, "system.qubit", "bias_hz");
        if (cfg.qubit.gap <= 0.0)
            throw ConfigError("system.qubit.gap_hz", "qubit gap must be positive");
    }
    {
        const json& r = require_key(system, "system", "resonator");
        reject_unknown(r, "system.resonator",
                       {"frequency_hz", "kappa_external_hz", "kappa_internal_hz", "n_max"});
        cfg.resonator.omega_r = two_pi * require_number(r, "system.resonator", "frequency_hz");
        cfg.resonator.kappa_external =
            two_pi * require_number(r, "system.resonator", "kappa_external_hz");
        cfg.resonator.kappa_internal =
            two_pi * require_number(r, "system.resonator", "kappa_internal_hz");
        cfg.resonator.n_max = require_int(r, "system.resonator", "n_max");
        if (cfg.resonator.omega_r <= 0.0 || cfg.resonator.kappa_external <= 0.0 ||
            cfg.resonator.kappa_internal <= 0.0)
            throw ConfigError("system.resonator", "frequency and loss rates must be positive");
        if (cfg.resonator.n_max < 1)
            throw ConfigError("system.resonator.n_max", "n_max must be >= 1");
    }
    {
        const json& c = require_key(system, "system", "coupling");
        reject_unknown(c, "system.coupling", {"g_transversal_hz", "g_longitudinal_hz"});
        cfg.coupling.g_transversal =
            two_pi * require_number(c, "system.coupling", "g_transversal_hz");
        cfg.coupling.g_longitudinal =
            two_pi * require_number(c, "system.coupling", "g_longitudinal_hz");
        if (cfg.coupling.g_transversal < 0.0 || cfg.coupling.g_longitudinal < 0.0)
            throw ConfigError("system.coupling", "couplings must be >= 0");
    }
    {
        const json& d = require_key(system, "system", "decoherence");
        reject_unknown(d, "system.decoherence", {"t1_s", "t2_s"});
        const double t1 = require_number(d, "system.decoherence", "t1_s");
        const double t2 = require_number(d, "system.decoherence", "t2_s");
        if (t1 <= 0.0 || t2 <= 0.0)
            throw ConfigError("system.decoherence", "T1 and T2 must be positive");
        cfg.dec.gamma1 = 1.0 / t1;
        cfg.dec.gamma2 = 1.0 / t2;
        try {
            cfg.dec.validate();
        } catch (const std::exception& e) {
            throw ConfigError("system.decoherence", e.what());
        }
    }
    {
        const json& d = require_key(doc, "", "drive");
        reject_unknown(d, "drive",
                       {"frequency_hz", "phase_rad", "amplitude_hz", "imbalance_db",
                        "residual_leakage", "temperature_k"});
        cfg.drive.omega = two_pi * require_number(d, "drive", "frequency_hz");
        cfg.drive.phase = std::fmod(require_number(d, "drive", "phase_rad"), two_pi);
        if (cfg.drive.phase < 0.0) cfg.drive.phase += two_pi;
        cfg.drive.omega_max = two_pi * require_number(d, "drive", "amplitude_hz");
        cfg.drive.imbalance_db = require_number(d, "drive", "imbalance_db");
        cfg.drive.residual_leakage = require_number(d, "drive", "residual_leakage");
        cfg.drive.temperature = require_number(d, "drive", "temperature_k");
        if (cfg.drive.omega_max < 0.0)
            throw ConfigError("drive.amplitude_hz", "drive amplitude must be >= 0");
        if (cfg.drive.temperature < 0.0)
            throw ConfigError("drive.temperature_k", "temperature must be >= 0");
    }
    if (doc.contains("sweep")) {
        const json& s = doc.at("sweep");
        reject_unknown(s, "sweep", {"x", "y"});
        if (s.contains("x")) cfg.sweep_x = parse_axis(s.at("x"), "sweep.x");
        if (s.contains("y")) cfg.sweep_y = parse_axis(s.at("y"), "sweep.y");
    }
    if (doc.contains("engine")) {
        const std::string e = require_string(doc, "", "engine");
        if (e == "analytic")
            cfg.engine = Engine::analytic;
        else if (e == "oracle")
            cfg.engine = Engine::oracle;
        else
            throw ConfigError("engine", "must be \"analytic\" or \"oracle\"");
    }
    if (doc.contains("propagation")) {
        cfg.has_propagation_block = true;
        const json& p = doc.at("propagation");
        reject_unknown(p, "propagation", {"t_final_factor", "oversample"});
        cfg.propagation.t_final_factor =
            optional_number(p, "propagation", "t_final_factor", cfg.propagation.t_final_factor);
        if (p.contains("oversample")) cfg.propagation.oversample = require_int(p, "propagation", "oversample");
        if (cfg.propagation.t_final_factor <= 0.0 || cfg.propagation.oversample < 1)
            throw ConfigError("propagation", "t_final_factor > 0 and oversample >= 1 required");
    }
    if (cfg.engine == Engine::oracle && !cfg.has_propagation_block)
        throw ConfigError("propagation", "engine \"oracle\" requires a propagation block");
    if (doc.contains("map")) {
        const json& m = doc.at("map");
        reject_unknown(m, "map", {"linewidth_prefactor", "multipliers"});
        cfg.map.linewidth_prefactor =
            optional_number(m, "map", "linewidth_prefactor", cfg.map.linewidth_prefactor);
        if (cfg.map.linewidth_prefactor <= 0.0)
            throw ConfigError("map.linewidth_prefactor", "must be positive");
        if (m.contains("multipliers")) {
            const json& mm = m.at("multipliers");
            reject_unknown(mm, "map.multipliers",
                           {"one_photon", "two_photon", "red_sideband", "blue_sideband",
                            "blue_two_photon"});
            auto& mu = cfg.map.multipliers;
            mu.one_photon = optional_number(mm, "map.multipliers", "one_photon", mu.one_photon);
            mu.two_photon = optional_number(mm, "map.multipliers", "two_photon", mu.two_photon);
            mu.red_sideband =
                optional_number(mm, "map.multipliers", "red_sideband", mu.red_sideband);
            mu.blue_sideband =
                optional_number(mm, "map.multipliers", "blue_sideband", mu.blue_sideband);
            mu.blue_two_photon =
                optional_number(mm, "map.multipliers", "blue_two_photon", mu.blue_two_photon);
        }
    }
    if (doc.contains("calibrate")) {
        const json& c = doc.at("calibrate");
        reject_unknown(c, "calibrate", {"n_bar_drive", "n_bar_readout"});
        cfg.calibrate.n_bar_drive =
            optional_number(c, "calibrate", "n_bar_drive", cfg.calibrate.n_bar_drive);
        cfg.calibrate.n_bar_readout =
            optional_number(c, "calibrate", "n_bar_readout", cfg.calibrate.n_bar_readout);
    }
    if (doc.contains("output")) {
        const json& o = doc.at("output");
        reject_unknown(o, "output", {"path", "format"});
        if (o.contains("path")) cfg.output.path = require_string(o, "output", "path");
        if (o.contains("format")) {
            const std::string f = require_string(o, "output", "format");
            if (f == "csv")
                cfg.output.format = OutputFormat::csv;
            else if (f == "json")
                cfg.output.format = OutputFormat::json;
            else
                throw ConfigError("output.format", "must be \"csv\" or \"json\"");
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides,
                      json* resolved) {
    json doc;
    if (path.empty()) {
        doc = default_config_json();
    } else {
        std::ifstream in(path);
        if (!in) throw ConfigError("", "cannot open config file: " + path);
        try {
            in >> doc;
        } catch (const json::parse_error& e) {
            throw ConfigError("", std::string("config JSON parse error: ") + e.what());
        }
    }
    for (const std::string& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw ConfigError("", "override must look like dotted.path=value: " + ov);
        const std::string dotted = ov.substr(0, eq);
        const std::string raw = ov.substr(eq + 1);
        json value;
        try {
            value = json::parse(raw);
        } catch (const json::parse_error&) {
            value = raw; // plain string
        }
        json* node = &doc;
        std::size_t begin = 0;
        while (true) {
            const auto dot = dotted.find('.', begin);
            const std::string key = dotted.substr(begin, dot - begin);
            if (key.empty()) throw ConfigError(dotted, "empty path segment in override");
            if (!node->is_object() && !node->is_null()) // null: fresh nested path
                throw ConfigError(dotted.substr(0, begin == 0 ? 0 : begin - 1),
                                  "override path traverses a non-object value");
            if (dot == std::string::npos) {
                (*node)[key] = value;
                break;
            }
            node = &(*node)[key];
            begin = dot + 1;
        }
    }
    if (resolved) *resolved = doc;
    return parse_config(doc);
}

} // namespace paritysim::config

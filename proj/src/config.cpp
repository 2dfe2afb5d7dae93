#include "g2flow/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace g2flow {

namespace {

using nlohmann::json;

Mat3 parse_mat3(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 3)
        throw ConfigError(field + ": expected a 3x3 array");
    Mat3 m;
    for (int i = 0; i < 3; ++i) {
        const json& row = j[i];
        if (!row.is_array() || row.size() != 3)
            throw ConfigError(field + ": expected a 3x3 array");
        for (int k = 0; k < 3; ++k) {
            if (!row[k].is_number()) throw ConfigError(field + ": entries must be numbers");
            m(i, k) = row[k].get<double>();
        }
    }
    return m;
}

StructureConstants parse_group(const json& j) {
    if (j.is_string()) {
        try {
            return preset(j.get<std::string>());
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(std::string("group: ") + ex.what());
        }
    }
    if (!j.is_object() || !j.contains("c"))
        throw ConfigError("group: expected a preset name or {name, c}");
    const json& jc = j["c"];
    if (!jc.is_array() || jc.size() != 3)
        throw ConfigError("group.c: expected a 3x3x3 array");
    Ten3 c{};
    for (int i = 0; i < 3; ++i) {
        if (!jc[i].is_array() || jc[i].size() != 3)
            throw ConfigError("group.c: expected a 3x3x3 array");
        for (int a = 0; a < 3; ++a) {
            const json& row = jc[i][a];
            if (!row.is_array() || row.size() != 3)
                throw ConfigError("group.c: expected a 3x3x3 array");
            for (int b = 0; b < 3; ++b) {
                if (!row[b].is_number())
                    throw ConfigError("group.c: entries must be numbers");
                c(i, a, b) = row[b].get<double>();
            }
        }
    }
    std::string name = j.contains("name") ? j["name"].get<std::string>() : "custom";
    try {
        StructureConstants sc(c, name);
        double scale = std::max(1.0, c.max_abs());
        if (sc.jacobi_residual() > 1e-10 * scale * scale)
            throw ConfigError("group.c: Jacobi identity violated");
        return sc;
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(std::string("group.c: ") + ex.what());
    }
}

MonitorKind parse_monitor(const std::string& s) {
    if (s == "state") return MonitorKind::state;
    if (s == "hamiltonian") return MonitorKind::hamiltonian;
    if (s == "constraint") return MonitorKind::constraint;
    if (s == "torsion") return MonitorKind::torsion;
    if (s == "adm") return MonitorKind::adm;
    throw ConfigError("monitors: unknown monitor '" + s + "'");
}

double require_number(const json& j, const std::string& field) {
    if (!j.is_number()) throw ConfigError(field + ": expected a number");
    return j.get<double>();
}

} // namespace

RunConfig parse_run_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& ex) {
        throw ConfigError(std::string("invalid JSON: ") + ex.what());
    }
    if (!j.is_object()) throw ConfigError("top level: expected an object");

    RunConfig cfg;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        const json& v = it.value();
        if (key == "group") {
            cfg.group = parse_group(v);
        } else if (key == "E0") {
            cfg.E0 = parse_mat3(v, "E0");
        } else if (key == "S0") {
            cfg.S0 = parse_mat3(v, "S0");
        } else if (key == "coeffs") {
            if (!v.is_object()) throw ConfigError("coeffs: expected {a, b}");
            if (v.contains("a")) cfg.coeffs.a = require_number(v["a"], "coeffs.a");
            if (v.contains("b")) cfg.coeffs.b = require_number(v["b"], "coeffs.b");
        } else if (key == "dt") {
            cfg.dt = require_number(v, "dt");
        } else if (key == "t_end") {
            cfg.t_end = require_number(v, "t_end");
        } else if (key == "monitors") {
            if (!v.is_array()) throw ConfigError("monitors: expected an array of names");
            cfg.monitors.clear();
            for (const json& m : v) {
                if (!m.is_string()) throw ConfigError("monitors: expected an array of names");
                cfg.monitors.insert(parse_monitor(m.get<std::string>()));
            }
        } else if (key == "stop") {
            if (!v.is_object()) throw ConfigError("stop: expected {min_detE, max_norm}");
            if (v.contains("min_detE"))
                cfg.min_detE = require_number(v["min_detE"], "stop.min_detE");
            if (v.contains("max_norm"))
                cfg.max_norm = require_number(v["max_norm"], "stop.max_norm");
        } else if (key == "seed") {
            if (!v.is_number_integer()) throw ConfigError("seed: expected an integer");
            cfg.seed = v.get<unsigned>();
        } else {
            throw ConfigError("unknown field '" + key + "'");
        }
    }

    if (!(cfg.dt > 0.0)) throw ConfigError("dt: must be positive");
    if (!(cfg.t_end > 0.0)) throw ConfigError("t_end: must be positive");
    if (!is_symmetric(cfg.S0, 1e-12 * std::max(1.0, cfg.S0.max_abs())))
        throw ConfigError("S0: must be symmetric");
    if (cfg.E0.det() <= 0.0) throw ConfigError("E0: must have positive determinant");
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

} // namespace g2flow

#include "jumpflow/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace jumpflow {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

const json& need(const json& obj, const std::string& where, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(where + ": missing required key '" + key + "'");
    return *it;
}

double as_double(const json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError(where + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(where + ": number must be finite");
    return x;
}

std::int64_t as_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
    return v.get<std::int64_t>();
}

std::uint64_t as_u64(const json& v, const std::string& where) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        throw ConfigError(where + ": expected a non-negative integer");
    return v.get<std::uint64_t>();
}

std::string as_string(const json& v, const std::string& where) {
    if (!v.is_string()) throw ConfigError(where + ": expected a string");
    return v.get<std::string>();
}

const std::set<std::string>& check_keys_for(const std::string& experiment) {
    static const std::map<std::string, std::set<std::string>> table = {
        {"simulate", {}},
        {"solve-fpe", {"max_leak"}},
        {"superpose", {"w1"}},
        {"defect", {"bias_allowance", "min_control_flag_rate"}},
        {"limit", {"floor_factor"}},
        {"moment-bound", {"min_slack"}},
    };
    return table.at(experiment);
}

} // namespace

ExperimentConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");

    static const std::set<std::string> kinds = {"simulate",  "solve-fpe", "superpose",
                                                "defect",    "limit",     "moment-bound"};
    require_keys(doc, "config",
                 {"experiment", "problem", "params", "horizon", "seed", "n_steps", "n_paths",
                  "dt", "checkpoints", "grid", "sequence", "defect", "checks"});

    ExperimentConfig c;
    c.experiment = as_string(need(doc, "config", "experiment"), "config.experiment");
    if (!kinds.count(c.experiment))
        throw ConfigError("config.experiment: unknown kind '" + c.experiment + "'");
    c.problem = as_string(need(doc, "config", "problem"), "config.problem");

    if (doc.contains("params")) {
        const json& p = doc["params"];
        if (!p.is_object()) throw ConfigError("config.params: expected an object");
        for (auto it = p.begin(); it != p.end(); ++it)
            c.params[it.key()] = as_double(it.value(), "config.params." + it.key());
    }

    c.horizon = as_double(need(doc, "config", "horizon"), "config.horizon");
    if (!(c.horizon > 0.0)) throw ConfigError("config.horizon: must be > 0");
    c.seed = as_u64(need(doc, "config", "seed"), "config.seed");

    if (doc.contains("n_steps")) {
        const std::int64_t v = as_int(doc["n_steps"], "config.n_steps");
        if (v < 1) throw ConfigError("config.n_steps: must be >= 1");
        c.n_steps = static_cast<int>(v);
    }
    if (doc.contains("n_paths")) {
        const std::uint64_t v = as_u64(doc["n_paths"], "config.n_paths");
        if (v < 1) throw ConfigError("config.n_paths: must be >= 1");
        c.n_paths = v;
    }
    if (doc.contains("dt")) {
        const double v = as_double(doc["dt"], "config.dt");
        if (!(v > 0.0)) throw ConfigError("config.dt: must be > 0");
        c.dt = v;
    }
    if (doc.contains("checkpoints")) {
        const json& arr = doc["checkpoints"];
        if (!arr.is_array() || arr.empty())
            throw ConfigError("config.checkpoints: expected a nonempty array");
        for (const auto& v : arr) {
            const double t = as_double(v, "config.checkpoints[]");
            if (t < 0.0 || t > c.horizon)
                throw ConfigError("config.checkpoints: values must lie in [0, horizon]");
            if (!c.checkpoints.empty() && t <= c.checkpoints.back())
                throw ConfigError("config.checkpoints: values must be strictly increasing");
            c.checkpoints.push_back(t);
        }
    }
    if (doc.contains("grid")) {
        const json& g = doc["grid"];
        if (!g.is_object()) throw ConfigError("config.grid: expected an object");
        require_keys(g, "config.grid", {"x_min", "x_max", "n_cells"});
        GridConfig gc;
        gc.x_min = as_double(need(g, "config.grid", "x_min"), "config.grid.x_min");
        gc.x_max = as_double(need(g, "config.grid", "x_max"), "config.grid.x_max");
        const std::int64_t n = as_int(need(g, "config.grid", "n_cells"), "config.grid.n_cells");
        if (!(gc.x_min < gc.x_max)) throw ConfigError("config.grid: x_min < x_max required");
        if (n < 8) throw ConfigError("config.grid.n_cells: must be >= 8");
        gc.n_cells = static_cast<int>(n);
        c.grid = gc;
    }
    if (doc.contains("sequence")) {
        const json& s = doc["sequence"];
        if (!s.is_object()) throw ConfigError("config.sequence: expected an object");
        require_keys(s, "config.sequence", {"kind", "n_values"});
        SequenceConfig sc;
        sc.kind = as_string(need(s, "config.sequence", "kind"), "config.sequence.kind");
        static const std::set<std::string> seq_kinds = {"mollify", "kill-jumps", "kill-diffusion",
                                                        "kill-both"};
        if (!seq_kinds.count(sc.kind))
            throw ConfigError("config.sequence.kind: unknown kind '" + sc.kind + "'");
        const json& arr = need(s, "config.sequence", "n_values");
        if (!arr.is_array() || arr.empty())
            throw ConfigError("config.sequence.n_values: expected a nonempty array");
        for (const auto& v : arr) {
            const std::int64_t n = as_int(v, "config.sequence.n_values[]");
            if (n < 1) throw ConfigError("config.sequence.n_values: must be >= 1");
            if (!sc.n_values.empty() && n <= sc.n_values.back())
                throw ConfigError("config.sequence.n_values: must be strictly increasing");
            sc.n_values.push_back(static_cast<int>(n));
        }
        c.sequence = sc;
    }
    if (doc.contains("defect")) {
        const json& d = doc["defect"];
        if (!d.is_object()) throw ConfigError("config.defect: expected an object");
        require_keys(d, "config.defect", {"s", "t", "drift_offset"});
        DefectConfig dc;
        dc.s = as_double(need(d, "config.defect", "s"), "config.defect.s");
        dc.t = as_double(need(d, "config.defect", "t"), "config.defect.t");
        if (!(0.0 <= dc.s && dc.s < dc.t && dc.t <= c.horizon))
            throw ConfigError("config.defect: need 0 <= s < t <= horizon");
        if (d.contains("drift_offset"))
            dc.drift_offset = as_double(d["drift_offset"], "config.defect.drift_offset");
        c.defect = dc;
    }
    if (doc.contains("checks")) {
        const json& ch = doc["checks"];
        if (!ch.is_object()) throw ConfigError("config.checks: expected an object");
        const auto& allowed = check_keys_for(c.experiment);
        for (auto it = ch.begin(); it != ch.end(); ++it) {
            if (!allowed.count(it.key()))
                throw ConfigError("config.checks: key '" + it.key() + "' not used by experiment '" +
                                  c.experiment + "'");
            const double v = as_double(it.value(), "config.checks." + it.key());
            if (!(v > 0.0)) throw ConfigError("config.checks." + it.key() + ": must be > 0");
            c.checks[it.key()] = v;
        }
    }

    // Per-kind requirements: reject unused sections outright.
    auto forbid = [&](bool present, const std::string& key) {
        if (present)
            throw ConfigError("config: key '" + key + "' is not used by experiment '" +
                              c.experiment + "'");
    };
    auto demand = [&](bool present, const std::string& key) {
        if (!present)
            throw ConfigError("config: experiment '" + c.experiment + "' requires key '" + key +
                              "'");
    };
    const bool mc = c.experiment == "simulate" || c.experiment == "superpose" ||
                    c.experiment == "defect" || c.experiment == "moment-bound" ||
                    c.experiment == "limit";
    if (mc) {
        demand(c.n_steps.has_value(), "n_steps");
        demand(c.n_paths.has_value(), "n_paths");
    } else {
        forbid(c.n_steps.has_value(), "n_steps");
        forbid(c.n_paths.has_value(), "n_paths");
    }
    const bool wants_grid = c.experiment == "solve-fpe" || c.experiment == "superpose";
    if (wants_grid)
        demand(c.grid.has_value(), "grid");
    else
        forbid(c.grid.has_value(), "grid");
    const bool wants_cp =
        c.experiment == "solve-fpe" || c.experiment == "superpose" || c.experiment == "limit";
    if (wants_cp)
        demand(!c.checkpoints.empty(), "checkpoints");
    else
        forbid(!c.checkpoints.empty(), "checkpoints");
    if (c.experiment == "limit")
        demand(c.sequence.has_value(), "sequence");
    else
        forbid(c.sequence.has_value(), "sequence");
    if (c.experiment == "defect")
        demand(c.defect.has_value(), "defect");
    else
        forbid(c.defect.has_value(), "defect");
    if (!wants_grid) forbid(c.dt.has_value(), "dt");

    return c;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse_config(doc);
}

nlohmann::ordered_json ExperimentConfig::canonical_json() const {
    nlohmann::ordered_json j;
    j["experiment"] = experiment;
    j["problem"] = problem;
    if (!params.empty()) j["params"] = params;
    j["horizon"] = horizon;
    j["seed"] = seed;
    if (n_steps) j["n_steps"] = *n_steps;
    if (n_paths) j["n_paths"] = *n_paths;
    if (dt) j["dt"] = *dt;
    if (!checkpoints.empty()) j["checkpoints"] = checkpoints;
    if (grid) {
        j["grid"] =
            nlohmann::ordered_json{{"x_min", grid->x_min}, {"x_max", grid->x_max}, {"n_cells", grid->n_cells}};
    }
    if (sequence) {
        j["sequence"] =
            nlohmann::ordered_json{{"kind", sequence->kind}, {"n_values", sequence->n_values}};
    }
    if (defect) {
        nlohmann::ordered_json d{{"s", defect->s}, {"t", defect->t}};
        if (defect->drift_offset) d["drift_offset"] = *defect->drift_offset;
        j["defect"] = d;
    }
    if (!checks.empty()) j["checks"] = checks;
    return j;
}

} // namespace jumpflow

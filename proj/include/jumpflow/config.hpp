#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace jumpflow {

// Invalid or unknown configuration content. The CLI maps this to exit
// code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridConfig {
    double x_min = -8.0;
    double x_max = 8.0;
    int n_cells = 1600;
};

struct SequenceConfig {
    std::string kind;           // mollify | kill-jumps | kill-diffusion | kill-both
    std::vector<int> n_values;
};

struct DefectConfig {
    double s = 0.0;
    double t = 0.0;
    std::optional<double> drift_offset; // negative-control generator perturbation
};

// One experiment, fully described by numbers and catalog names. Unknown
// keys anywhere are errors, never silent defaults.
struct ExperimentConfig {
    std::string experiment; // simulate | solve-fpe | superpose | defect | limit | moment-bound
    std::string problem;
    std::map<std::string, double> params;
    double horizon = 1.0;
    std::uint64_t seed = 0;
    std::optional<int> n_steps;
    std::optional<std::uint64_t> n_paths;
    std::optional<double> dt; // absent: largest stable step
    std::vector<double> checkpoints;
    std::optional<GridConfig> grid;
    std::optional<SequenceConfig> sequence;
    std::optional<DefectConfig> defect;
    std::map<std::string, double> checks; // per-kind tolerance overrides

    // Canonical JSON round-trip: parse(canonical_json(c)) == c.
    nlohmann::ordered_json canonical_json() const;
};

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config_file(const std::string& path);

} // namespace jumpflow

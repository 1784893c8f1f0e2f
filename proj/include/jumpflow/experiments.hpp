#pragma once

#include <filesystem>

#include <json.hpp>

#include "jumpflow/config.hpp"
#include "jumpflow/martingale.hpp"
#include "jumpflow/test_functions.hpp"

namespace jumpflow {

struct RunResult {
    int exit_code = 0; // 0 all checks pass, 1 at least one check failed
    nlohmann::ordered_json summary;
};

// Execute one configured experiment. Writes summary.json, repro.json
// and the experiment's CSV/JSON tables into out_dir (created if
// absent); every file is written atomically. Identical configs produce
// byte-identical data files for any n_threads.
RunResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                         int n_threads = 1);

// The probe dictionary used by the defect experiment: bumps from
// default_bump_dictionary() and path functionals anchored at cutoff s.
std::vector<PathFunctional> default_chi_dictionary(double s);

} // namespace jumpflow

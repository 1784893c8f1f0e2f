#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace jumpflow {

// One discrete cadlag sample path on its jump-adapted grid. `times`
// holds 0, the horizon, every uniform grid point and every jump time;
// `values` holds the right limit at each time (dim doubles per entry).
// Left limits are recorded only where they differ, i.e. at jump times.
struct PathSample {
    int dim = 1;
    std::vector<double> times;
    std::vector<double> values;             // times.size() * dim, row-major
    std::vector<std::uint32_t> jump_index;  // positions in `times` that carry a jump
    std::vector<double> pre_jump_values;    // jump_index.size() * dim, left limits
    bool aborted = false;
    std::string abort_reason;

    std::size_t n_times() const noexcept { return times.size(); }

    std::span<const double> value_at(std::size_t i) const {
        return {values.data() + i * static_cast<std::size_t>(dim),
                static_cast<std::size_t>(dim)};
    }
    std::span<const double> pre_jump_value(std::size_t j) const {
        return {pre_jump_values.data() + j * static_cast<std::size_t>(dim),
                static_cast<std::size_t>(dim)};
    }

    // Index of the last grid time <= t (cadlag state lookup).
    std::size_t index_at(double t) const;
    std::span<const double> state_at(double t) const { return value_at(index_at(t)); }

    // sup over the recorded skeleton of the Euclidean norm, left limits
    // included.
    double sup_norm() const;
};

struct PathEnsemble {
    int dim = 1;
    double horizon = 0.0;
    std::uint64_t master_seed = 0;
    std::uint64_t config_fingerprint = 0;
    std::vector<PathSample> paths;

    std::size_t size() const noexcept { return paths.size(); }
    std::size_t aborted_count() const noexcept;
};

} // namespace jumpflow

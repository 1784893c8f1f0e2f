#pragma once

#include <cstdint>
#include <vector>

namespace jumpflow {

// Finite sample cloud standing in for a fixed-time marginal law.
struct EmpiricalLaw {
    int dim = 1;
    double time = 0.0;
    std::uint64_t source_fingerprint = 0;
    std::vector<double> samples; // n * dim, row-major

    std::size_t size() const noexcept {
        return dim > 0 ? samples.size() / static_cast<std::size_t>(dim) : 0;
    }
    void validate() const; // nonempty, all finite
    // Sorted copy of the samples; requires dim == 1.
    std::vector<double> sorted_1d() const;
    double mean_1d() const;
    double variance_1d() const;
};

} // namespace jumpflow

#include "jumpflow/path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jumpflow {

std::size_t PathSample::index_at(double t) const {
    if (times.empty()) throw std::logic_error("PathSample: empty path");
    if (t < times.front() || t > times.back())
        throw std::out_of_range("PathSample::index_at: time outside [0, horizon]");
    auto it = std::upper_bound(times.begin(), times.end(), t);
    return static_cast<std::size_t>(it - times.begin()) - 1;
}

double PathSample::sup_norm() const {
    auto norm = [this](const double* p) {
        double s = 0.0;
        for (int c = 0; c < dim; ++c) s += p[c] * p[c];
        return std::sqrt(s);
    };
    double best = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i)
        best = std::max(best, norm(values.data() + i * static_cast<std::size_t>(dim)));
    for (std::size_t j = 0; j * static_cast<std::size_t>(dim) < pre_jump_values.size(); ++j)
        best = std::max(best, norm(pre_jump_values.data() + j * static_cast<std::size_t>(dim)));
    return best;
}

std::size_t PathEnsemble::aborted_count() const noexcept {
    std::size_t n = 0;
    for (const auto& p : paths) n += p.aborted ? 1 : 0;
    return n;
}

} // namespace jumpflow

#include "jumpflow/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jumpflow {

void EmpiricalLaw::validate() const {
    if (dim < 1) throw std::invalid_argument("EmpiricalLaw: dim must be >= 1");
    if (samples.empty()) throw std::invalid_argument("EmpiricalLaw: no samples");
    if (samples.size() % static_cast<std::size_t>(dim) != 0)
        throw std::invalid_argument("EmpiricalLaw: sample buffer not a multiple of dim");
    for (double s : samples)
        if (!std::isfinite(s)) throw std::invalid_argument("EmpiricalLaw: non-finite sample");
}

std::vector<double> EmpiricalLaw::sorted_1d() const {
    if (dim != 1) throw std::invalid_argument("EmpiricalLaw: 1-D operation on multi-d law");
    std::vector<double> out(samples);
    std::sort(out.begin(), out.end());
    return out;
}

double EmpiricalLaw::mean_1d() const {
    if (dim != 1) throw std::invalid_argument("EmpiricalLaw: 1-D operation on multi-d law");
    if (samples.empty()) throw std::invalid_argument("EmpiricalLaw: no samples");
    double s = 0.0;
    for (double x : samples) s += x;
    return s / static_cast<double>(samples.size());
}

double EmpiricalLaw::variance_1d() const {
    const double m = mean_1d();
    double s = 0.0;
    for (double x : samples) s += (x - m) * (x - m);
    return s / static_cast<double>(samples.size());
}

} // namespace jumpflow

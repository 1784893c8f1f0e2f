#include "jumpflow/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace jumpflow {

namespace {

// Integral of |F_a - F_b| for two right-continuous step CDFs given by
// jump locations (sorted) and jump sizes.
double step_cdf_distance(std::span<const double> xa, std::span<const double> wa,
                         std::span<const double> xb, std::span<const double> wb) {
    double fa = 0.0, fb = 0.0, dist = 0.0;
    std::size_t i = 0, j = 0;
    double x_prev = 0.0;
    bool started = false;
    while (i < xa.size() || j < xb.size()) {
        const double x = (j >= xb.size() || (i < xa.size() && xa[i] <= xb[j])) ? xa[i] : xb[j];
        if (started && x > x_prev) dist += std::fabs(fa - fb) * (x - x_prev);
        while (i < xa.size() && xa[i] == x) fa += wa[i++];
        while (j < xb.size() && xb[j] == x) fb += wb[j++];
        x_prev = x;
        started = true;
    }
    return dist;
}

std::vector<double> uniform_weights(std::size_t n) {
    return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

// |h| integrated over a segment of length len where h varies linearly
// from h0 to h1.
double abs_linear_integral(double h0, double h1, double len) {
    if (len <= 0.0) return 0.0;
    if (h0 * h1 >= 0.0) return 0.5 * len * (std::fabs(h0) + std::fabs(h1));
    const double a0 = std::fabs(h0), a1 = std::fabs(h1);
    return 0.5 * len * (a0 * a0 + a1 * a1) / (a0 + a1);
}

} // namespace

double wasserstein1(const EmpiricalLaw& a, const EmpiricalLaw& b) {
    a.validate();
    b.validate();
    if (a.dim != 1 || b.dim != 1)
        throw std::invalid_argument("wasserstein1: 1-D laws required");
    const std::vector<double> xa = a.sorted_1d();
    const std::vector<double> xb = b.sorted_1d();
    if (xa.size() == xb.size()) {
        double s = 0.0;
        for (std::size_t i = 0; i < xa.size(); ++i) s += std::fabs(xa[i] - xb[i]);
        return s / static_cast<double>(xa.size());
    }
    return step_cdf_distance(xa, uniform_weights(xa.size()), xb, uniform_weights(xb.size()));
}

double w1_against_atoms(const EmpiricalLaw& a, std::span<const double> positions,
                        std::span<const double> probabilities) {
    a.validate();
    if (a.dim != 1) throw std::invalid_argument("w1_against_atoms: 1-D law required");
    if (positions.size() != probabilities.size())
        throw std::invalid_argument("w1_against_atoms: positions/probabilities size mismatch");
    std::vector<std::size_t> order(positions.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return positions[i] < positions[j]; });
    std::vector<double> xs(positions.size()), ws(positions.size());
    double total = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        xs[k] = positions[order[k]];
        ws[k] = probabilities[order[k]];
        total += ws[k];
    }
    if (std::fabs(total - 1.0) > 1e-6)
        throw std::invalid_argument("w1_against_atoms: probabilities must sum to 1");
    for (auto& w : ws) w /= total;
    const std::vector<double> xa = a.sorted_1d();
    return step_cdf_distance(xa, uniform_weights(xa.size()), xs, ws);
}

double w1_against_density(const EmpiricalLaw& a, const GridDensity1D& v) {
    a.validate();
    if (a.dim != 1) throw std::invalid_argument("w1_against_density: 1-D law required");
    const Grid1D& grid = v.grid;
    const int n = grid.n_cells;
    const double dx = grid.dx();
    const double grid_mass = v.mass();
    if (grid_mass < 1.0 - 1e-3)
        throw std::invalid_argument("w1_against_density: grid mass below 1 - 1e-3 (excessive leak)");

    // Breakpoints: cell edges plus sample points. Between consecutive
    // breakpoints F_emp is constant and the renormalized F_v is linear.
    const std::vector<double> samples = a.sorted_1d();
    std::vector<double> cum(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 0; i < n; ++i)
        cum[static_cast<std::size_t>(i) + 1] =
            cum[static_cast<std::size_t>(i)] + v.v[static_cast<std::size_t>(i)] * dx;
    auto f_density = [&](double x) {
        if (x <= grid.x_min) return 0.0;
        if (x >= grid.x_max) return 1.0;
        int i = static_cast<int>((x - grid.x_min) / dx);
        i = std::clamp(i, 0, n - 1);
        const double local = cum[static_cast<std::size_t>(i)] +
                             v.v[static_cast<std::size_t>(i)] * (x - grid.edge(i));
        return local / grid_mass;
    };

    std::vector<double> breaks;
    breaks.reserve(samples.size() + static_cast<std::size_t>(n) + 2);
    for (int i = 0; i <= n; ++i) breaks.push_back(grid.edge(i));
    breaks.insert(breaks.end(), samples.begin(), samples.end());
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    const double inv_n = 1.0 / static_cast<double>(samples.size());
    double dist = 0.0;
    std::size_t si = 0;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        const double xl = breaks[k];
        const double xr = breaks[k + 1];
        while (si < samples.size() && samples[si] <= xl) ++si;
        const double fe = static_cast<double>(si) * inv_n;
        dist += abs_linear_integral(fe - f_density(xl), fe - f_density(xr), xr - xl);
    }
    return dist;
}

} // namespace jumpflow

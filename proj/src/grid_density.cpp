#include "jumpflow/grid_density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jumpflow {

void Grid1D::validate() const {
    if (!(x_min < x_max)) throw std::invalid_argument("Grid1D: x_min < x_max required");
    if (n_cells < 8) throw std::invalid_argument("Grid1D: n_cells >= 8 required");
}

double GridDensity1D::mass() const noexcept {
    double s = 0.0;
    for (double c : v) s += c;
    return s * grid.dx();
}

double GridDensity1D::mean() const noexcept {
    double s = 0.0;
    for (int i = 0; i < grid.n_cells; ++i) s += grid.center(i) * v[static_cast<std::size_t>(i)];
    return s * grid.dx();
}

double GridDensity1D::variance() const noexcept {
    const double m = mean();
    double s = 0.0;
    for (int i = 0; i < grid.n_cells; ++i) {
        const double d = grid.center(i) - m;
        s += d * d * v[static_cast<std::size_t>(i)];
    }
    return s * grid.dx();
}

void GridDensity1D::validate() const {
    grid.validate();
    if (v.size() != static_cast<std::size_t>(grid.n_cells))
        throw std::invalid_argument("GridDensity1D: cell count mismatch");
    for (double c : v)
        if (!(c >= 0.0) || !std::isfinite(c))
            throw std::invalid_argument("GridDensity1D: cells must be finite and >= 0");
    if (!(leaked_mass >= 0.0))
        throw std::invalid_argument("GridDensity1D: leaked mass must be >= 0");
    if (std::fabs(total_with_leak() - 1.0) > 1e-9)
        throw std::invalid_argument("GridDensity1D: mass + leak must equal 1 within 1e-9");
}

GridDensity1D GridDensity1D::from_function(const Grid1D& g, const std::function<double(double)>& f) {
    g.validate();
    GridDensity1D d;
    d.grid = g;
    d.v.resize(static_cast<std::size_t>(g.n_cells));
    double mass = 0.0;
    for (int i = 0; i < g.n_cells; ++i) {
        const double val = f(g.center(i));
        if (!(val >= 0.0) || !std::isfinite(val))
            throw std::invalid_argument("GridDensity1D::from_function: f must be finite and >= 0");
        d.v[static_cast<std::size_t>(i)] = val;
        mass += val;
    }
    mass *= g.dx();
    if (!(mass > 0.0))
        throw std::invalid_argument("GridDensity1D::from_function: zero mass on grid");
    for (auto& c : d.v) c /= mass;
    return d;
}

GridDensity1D GridDensity1D::gaussian(const Grid1D& g, double mean, double stddev) {
    if (!(stddev > 0.0)) throw std::invalid_argument("GridDensity1D::gaussian: stddev must be > 0");
    const double inv = 1.0 / (2.0 * stddev * stddev);
    return from_function(g, [mean, inv](double x) {
        const double d = x - mean;
        return std::exp(-d * d * inv);
    });
}

GridDensity1D GridDensity1D::delta_at(const Grid1D& g, double c) {
    g.validate();
    if (c < g.x_min || c > g.x_max)
        throw std::invalid_argument("GridDensity1D::delta_at: point outside grid");
    GridDensity1D d;
    d.grid = g;
    d.v.assign(static_cast<std::size_t>(g.n_cells), 0.0);
    int i = static_cast<int>((c - g.x_min) / g.dx());
    i = std::clamp(i, 0, g.n_cells - 1);
    d.v[static_cast<std::size_t>(i)] = 1.0 / g.dx();
    return d;
}

GridDensity1D GridDensity1D::uniform_on(const Grid1D& g, double a, double b) {
    if (!(a < b)) throw std::invalid_argument("GridDensity1D::uniform_on: a < b required");
    return from_function(g, [a, b](double x) { return (x >= a && x <= b) ? 1.0 : 0.0; });
}

double first_moment(const GridDensity1D& density) {
    double s = 0.0;
    for (int i = 0; i < density.grid.n_cells; ++i)
        s += std::fabs(density.grid.center(i)) * density.v[static_cast<std::size_t>(i)];
    return s * density.grid.dx();
}

} // namespace jumpflow

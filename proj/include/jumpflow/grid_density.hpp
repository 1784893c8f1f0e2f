#pragma once

#include <functional>
#include <vector>

namespace jumpflow {

// Uniform 1-D cell grid on [x_min, x_max].
struct Grid1D {
    double x_min = -1.0;
    double x_max = 1.0;
    int n_cells = 8;

    double dx() const noexcept { return (x_max - x_min) / n_cells; }
    double center(int i) const noexcept { return x_min + (i + 0.5) * dx(); }
    double edge(int i) const noexcept { return x_min + i * dx(); }
    void validate() const;
    bool operator==(const Grid1D&) const = default;
};

// Cell-averaged probability density with an explicit ledger for mass
// that left the domain through the absorbing boundary.
struct GridDensity1D {
    Grid1D grid;
    std::vector<double> v;      // one nonnegative cell average per cell
    double leaked_mass = 0.0;
    double time = 0.0;

    double mass() const noexcept;                 // dx * sum v
    double total_with_leak() const noexcept { return mass() + leaked_mass; }
    double mean() const noexcept;                 // dx * sum x v       (signed)
    double variance() const noexcept;
    void validate() const;                        // shape, v >= 0, mass+leak ~ 1

    // Constructors normalize grid mass to exactly 1.
    static GridDensity1D from_function(const Grid1D& g, const std::function<double(double)>& f);
    static GridDensity1D gaussian(const Grid1D& g, double mean, double stddev);
    static GridDensity1D delta_at(const Grid1D& g, double c); // mass in the nearest cell
    static GridDensity1D uniform_on(const Grid1D& g, double a, double b);
};

// Integral of |x| against the density: dx * sum |x_i| v_i.
double first_moment(const GridDensity1D& density);

} // namespace jumpflow

#pragma once

#include <span>

#include "jumpflow/empirical.hpp"
#include "jumpflow/grid_density.hpp"

namespace jumpflow {

// Exact 1-D Wasserstein-1 distance between two sample clouds. Equal
// sizes use the sorted quantile coupling, otherwise the CDF-difference
// integral over the merged breakpoint set.
double wasserstein1(const EmpiricalLaw& a, const EmpiricalLaw& b);

// Exact integral of |F_emp - F_v| where F_v is the piecewise-linear CDF
// of the cell-averaged density, renormalized to its grid mass. Requires
// grid mass >= 1 - 1e-3.
double w1_against_density(const EmpiricalLaw& a, const GridDensity1D& v);

// W1 between a sample cloud and an atomic law (positions, probabilities
// summing to ~1). Used by series oracles.
double w1_against_atoms(const EmpiricalLaw& a, std::span<const double> positions,
                        std::span<const double> probabilities);

} // namespace jumpflow

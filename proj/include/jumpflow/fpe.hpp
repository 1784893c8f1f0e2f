#pragma once

#include <span>
#include <vector>

#include "jumpflow/coefficients.hpp"
#include "jumpflow/grid_density.hpp"
#include "jumpflow/test_functions.hpp"

namespace jumpflow {

// Explicit finite-volume solver for the 1-D non-local Fokker-Planck
// equation with additive jumps (shift gamma*u per mark atom):
//   dv/dt = -d(b v)/dx + d^2(a v)/dx^2
//           + sum_k w_k [ v(x - gamma u_k) - v(x) ],   a = sigma^2/2.
// Drift uses first-order upwind fluxes, diffusion central differences
// of (a v), the jump gain linear interpolation at x - gamma u_k. The
// boundary is absorbing: outflow accumulates in leaked_mass.

// Largest stable time step at time t: the reciprocal of
//   max( max|b|/dx + 2 max a/dx^2 + nu(U),  max_i per-cell loss rate ),
// so the update stays a convex combination and no cell can go negative.
double cfl_max_dt(const CoefficientSet& cs, const Grid1D& grid, double t);

// One explicit step. Throws std::invalid_argument when dt violates the
// CFL bound; the message carries the largest admissible dt.
GridDensity1D fpe_step(const GridDensity1D& state, const CoefficientSet& cs, double dt);

struct DensityTrajectory {
    std::vector<GridDensity1D> checkpoints; // ascending .time, first entry is t=0

    std::vector<double> times() const;
    const GridDensity1D& at_time(double t) const;
    const GridDensity1D& final() const { return checkpoints.back(); }
};

// March to max(checkpoint_times) with steps of size <= dt, landing on
// every checkpoint exactly. t=0 is always recorded.
DensityTrajectory solve_fpe(const CoefficientSet& cs, const GridDensity1D& v0, double horizon,
                            double dt, std::span<const double> checkpoint_times);

// mu_t(phi) - mu_0(phi) - Integral_0^t mu_s((A_s+B_s) phi) ds with
// trapezoid quadrature over the trajectory's checkpoints and cell-sum
// spatial quadrature. t must be a checkpoint; phi's support plus the
// largest jump shift must stay inside the domain.
double weak_form_residual(const DensityTrajectory& traj, const CoefficientSet& cs,
                          const TestFunction& phi, double t);

} // namespace jumpflow

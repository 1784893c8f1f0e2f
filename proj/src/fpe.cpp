#include "jumpflow/fpe.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "jumpflow/generator.hpp"

namespace jumpflow {

namespace {

struct StepRates {
    std::vector<double> b_face;  // n+1 face velocities
    std::vector<double> a_cell;  // n cell diffusion coefficients
    double nu_mass = 0.0;
    double spec_rate = 0.0;      // max|b|/dx + 2 max a/dx^2 + nu(U)
    double max_loss_rate = 0.0;  // max_i per-cell convexity loss rate
};

StepRates evaluate_rates(const CoefficientSet& cs, const Grid1D& grid, double t) {
    if (cs.dim != 1) throw std::invalid_argument("fpe: 1-D coefficient set required");
    grid.validate();
    const int n = grid.n_cells;
    const double dx = grid.dx();

    StepRates r;
    r.nu_mass = cs.nu.total_mass();
    r.b_face.resize(static_cast<std::size_t>(n) + 1);
    r.a_cell.resize(static_cast<std::size_t>(n));
    double max_abs_b = 0.0, max_a = 0.0;
    for (int j = 0; j <= n; ++j) {
        const double b = drift_1d(cs, t, grid.edge(j));
        if (!std::isfinite(b)) throw std::runtime_error("fpe: non-finite drift");
        r.b_face[static_cast<std::size_t>(j)] = b;
        max_abs_b = std::max(max_abs_b, std::fabs(b));
    }
    for (int i = 0; i < n; ++i) {
        const double a = a_1d(cs, t, grid.center(i));
        if (!std::isfinite(a) || a < 0.0) throw std::runtime_error("fpe: invalid diffusion");
        r.a_cell[static_cast<std::size_t>(i)] = a;
        max_a = std::max(max_a, a);
    }
    r.spec_rate = max_abs_b / dx + 2.0 * max_a / (dx * dx) + r.nu_mass;
    for (int i = 0; i < n; ++i) {
        const double out_right = std::max(r.b_face[static_cast<std::size_t>(i) + 1], 0.0);
        const double out_left = std::max(-r.b_face[static_cast<std::size_t>(i)], 0.0);
        const double loss = (out_right + out_left) / dx +
                            2.0 * r.a_cell[static_cast<std::size_t>(i)] / (dx * dx) + r.nu_mass;
        r.max_loss_rate = std::max(r.max_loss_rate, loss);
    }
    return r;
}

} // namespace

double cfl_max_dt(const CoefficientSet& cs, const Grid1D& grid, double t) {
    const StepRates r = evaluate_rates(cs, grid, t);
    const double rate = std::max(r.spec_rate, r.max_loss_rate);
    return rate > 0.0 ? 1.0 / rate : std::numeric_limits<double>::infinity();
}

GridDensity1D fpe_step(const GridDensity1D& state, const CoefficientSet& cs, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("fpe_step: dt must be > 0");
    const Grid1D& grid = state.grid;
    const int n = grid.n_cells;
    const double dx = grid.dx();
    if (state.v.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("fpe_step: cell count mismatch");
    if (!cs.nu.empty() && cs.nu.mark_dim() != 1)
        throw std::invalid_argument("fpe_step: scalar marks required (additive jumps)");

    const StepRates r = evaluate_rates(cs, grid, state.time);
    const double rate = std::max(r.spec_rate, r.max_loss_rate);
    if (dt * rate > 1.0 + 1e-12) {
        std::ostringstream os;
        os << "fpe_step: CFL violation, dt=" << dt << " exceeds max admissible dt=" << 1.0 / rate;
        throw std::invalid_argument(os.str());
    }

    const std::vector<double>& v = state.v;
    GridDensity1D next;
    next.grid = grid;
    next.time = state.time + dt;
    next.leaked_mass = state.leaked_mass;
    next.v.assign(static_cast<std::size_t>(n), 0.0);

    // Jump gain, one constant shift per atom, linear interpolation at
    // cell centers (zero outside the domain).
    std::vector<double> gain;
    double gain_total = 0.0;
    if (r.nu_mass > 0.0) {
        gain.assign(static_cast<std::size_t>(n), 0.0);
        for (std::size_t k = 0; k < cs.nu.size(); ++k) {
            const auto& atom = cs.nu.atom(k);
            const double shift = cs.jump_scale * atom.mark[0];
            const double delta = -shift / dx;
            const double qf = std::floor(delta);
            const double theta = delta - qf;
            const long q = static_cast<long>(qf);
            for (int i = 0; i < n; ++i) {
                const long j = i + q;
                double val = 0.0;
                if (j >= 0 && j < n) val += (1.0 - theta) * v[static_cast<std::size_t>(j)];
                if (j + 1 >= 0 && j + 1 < n) val += theta * v[static_cast<std::size_t>(j) + 1];
                gain[static_cast<std::size_t>(i)] += atom.weight * val;
            }
        }
        for (double gi : gain) gain_total += gi;
    }

    // Convex-combination form: v_i (1 - dt * loss_i) + dt * inflow_i,
    // both factors nonnegative under the CFL bound, so cells cannot go
    // negative even in floating point.
    for (int i = 0; i < n; ++i) {
        const std::size_t ui = static_cast<std::size_t>(i);
        const double b_l = r.b_face[ui];
        const double b_r = r.b_face[ui + 1];
        const double loss =
            (std::max(b_r, 0.0) + std::max(-b_l, 0.0)) / dx + 2.0 * r.a_cell[ui] / (dx * dx) + r.nu_mass;
        double inflow = 0.0;
        if (i > 0)
            inflow += std::max(b_l, 0.0) * v[ui - 1] / dx + r.a_cell[ui - 1] * v[ui - 1] / (dx * dx);
        if (i + 1 < n)
            inflow += std::max(-b_r, 0.0) * v[ui + 1] / dx + r.a_cell[ui + 1] * v[ui + 1] / (dx * dx);
        if (!gain.empty()) inflow += gain[ui];
        next.v[ui] = v[ui] * (1.0 - dt * loss) + dt * inflow;
    }

    // Boundary outflow ledger: advective upwind flux through the end
    // faces, diffusive flux against the zero exterior, and jump mass
    // landing outside the domain.
    const double mass_old = state.mass();
    double leak = 0.0;
    leak += dt * (std::max(r.b_face[static_cast<std::size_t>(n)], 0.0) * v[static_cast<std::size_t>(n) - 1] +
                  std::max(-r.b_face[0], 0.0) * v[0]);
    leak += dt * (r.a_cell[0] * v[0] + r.a_cell[static_cast<std::size_t>(n) - 1] * v[static_cast<std::size_t>(n) - 1]) / dx;
    if (r.nu_mass > 0.0) leak += dt * (r.nu_mass * mass_old - gain_total * dx);
    next.leaked_mass += std::max(leak, 0.0);
    return next;
}

std::vector<double> DensityTrajectory::times() const {
    std::vector<double> out;
    out.reserve(checkpoints.size());
    for (const auto& c : checkpoints) out.push_back(c.time);
    return out;
}

const GridDensity1D& DensityTrajectory::at_time(double t) const {
    for (const auto& c : checkpoints)
        if (std::fabs(c.time - t) <= 1e-12 * std::max(1.0, std::fabs(t))) return c;
    throw std::invalid_argument("DensityTrajectory: requested time is not a checkpoint");
}

DensityTrajectory solve_fpe(const CoefficientSet& cs, const GridDensity1D& v0, double horizon,
                            double dt, std::span<const double> checkpoint_times) {
    v0.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("solve_fpe: dt must be > 0");
    std::vector<double> cps(checkpoint_times.begin(), checkpoint_times.end());
    std::sort(cps.begin(), cps.end());
    for (double t : cps)
        if (t < 0.0 || t > horizon)
            throw std::invalid_argument("solve_fpe: checkpoint outside [0, horizon]");

    DensityTrajectory traj;
    GridDensity1D cur = v0;
    cur.time = 0.0;
    traj.checkpoints.push_back(cur);

    double t = 0.0;
    for (double cp : cps) {
        if (cp <= t + 1e-15) continue; // t=0 already recorded; dedupe
        while (t < cp - 1e-15) {
            const double step = std::min(dt, cp - t);
            cur = fpe_step(cur, cs, step);
            t = cur.time;
        }
        cur.time = cp; // absorb float accumulation drift
        traj.checkpoints.push_back(cur);
    }
    return traj;
}

double weak_form_residual(const DensityTrajectory& traj, const CoefficientSet& cs,
                          const TestFunction& phi, double t) {
    if (traj.checkpoints.empty()) throw std::invalid_argument("weak_form_residual: empty trajectory");
    const Grid1D& grid = traj.checkpoints.front().grid;
    const int n = grid.n_cells;
    const double dx = grid.dx();

    double max_shift = 0.0;
    for (std::size_t k = 0; k < cs.nu.size(); ++k)
        max_shift = std::max(max_shift, std::fabs(cs.jump_scale * cs.nu.atom(k).mark[0]));
    if (phi.center - phi.support_radius - max_shift < grid.x_min ||
        phi.center + phi.support_radius + max_shift > grid.x_max)
        throw std::invalid_argument(
            "weak_form_residual: test function support (plus jump shifts) exceeds the domain");

    // locate t among checkpoints
    std::size_t last = traj.checkpoints.size();
    for (std::size_t j = 0; j < traj.checkpoints.size(); ++j) {
        if (std::fabs(traj.checkpoints[j].time - t) <= 1e-12 * std::max(1.0, std::fabs(t))) {
            last = j;
            break;
        }
    }
    if (last == traj.checkpoints.size())
        throw std::invalid_argument("weak_form_residual: t is not a checkpoint");

    auto mu_phi = [&](const GridDensity1D& d) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += d.v[static_cast<std::size_t>(i)] * phi.value(grid.center(i));
        return s * dx;
    };
    auto mu_gen = [&](const GridDensity1D& d) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            const double vi = d.v[static_cast<std::size_t>(i)];
            if (vi == 0.0) continue;
            s += vi * apply_generator(cs, d.time, phi, grid.center(i));
        }
        return s * dx;
    };

    double integral = 0.0;
    double prev_g = mu_gen(traj.checkpoints.front());
    for (std::size_t j = 1; j <= last; ++j) {
        const double g = mu_gen(traj.checkpoints[j]);
        const double h = traj.checkpoints[j].time - traj.checkpoints[j - 1].time;
        integral += 0.5 * h * (prev_g + g);
        prev_g = g;
    }
    return mu_phi(traj.checkpoints[last]) - mu_phi(traj.checkpoints.front()) - integral;
}

} // namespace jumpflow

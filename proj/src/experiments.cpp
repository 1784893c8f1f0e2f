#include "jumpflow/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "jumpflow/catalog.hpp"
#include "jumpflow/fpe.hpp"
#include "jumpflow/generator.hpp"
#include "jumpflow/limits.hpp"
#include "jumpflow/moment_bound.hpp"
#include "jumpflow/report_io.hpp"
#include "jumpflow/simulate.hpp"
#include "jumpflow/version.hpp"
#include "jumpflow/wasserstein.hpp"

namespace jumpflow {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct Verdicts {
    ordered_json rows = ordered_json::array();
    bool all_pass = true;

    void add(const std::string& name, double value, double threshold, bool pass) {
        rows.push_back(ordered_json{{"name", name},
                                    {"value", value},
                                    {"threshold", threshold},
                                    {"pass", pass}});
        all_pass = all_pass && pass;
    }
};

double check_or(const ExperimentConfig& cfg, const std::string& key, double fallback) {
    auto it = cfg.checks.find(key);
    return it == cfg.checks.end() ? fallback : it->second;
}

EnsembleOptions mc_options(const ExperimentConfig& cfg, int n_threads) {
    EnsembleOptions opt;
    opt.horizon = cfg.horizon;
    opt.n_steps = cfg.n_steps.value();
    opt.n_paths = static_cast<std::size_t>(cfg.n_paths.value());
    opt.master_seed = cfg.seed;
    opt.n_threads = n_threads;
    return opt;
}

Grid1D make_grid(const GridConfig& gc) {
    Grid1D g;
    g.x_min = gc.x_min;
    g.x_max = gc.x_max;
    g.n_cells = gc.n_cells;
    g.validate();
    return g;
}

double solver_dt(const ExperimentConfig& cfg, const CoefficientSet& cs, const Grid1D& grid) {
    const double stable = cfl_max_dt(cs, grid, 0.0);
    if (cfg.dt) {
        if (*cfg.dt > stable)
            throw ConfigError("config.dt exceeds the largest stable step " +
                              format_double(stable));
        return *cfg.dt;
    }
    return stable;
}

void run_simulate(const ExperimentConfig& cfg, const Problem& prob, const fs::path& out,
                  int n_threads, Verdicts& verdicts, ordered_json& extra,
                  std::vector<std::string>& artifacts) {
    const PathEnsemble ens = simulate_ensemble(prob.coeffs, prob.mu0_sampler, mc_options(cfg, n_threads));

    AtomicCsv csv(out / "paths.csv", "time,path_id,value");
    for (std::size_t i = 0; i < ens.size(); ++i) {
        const PathSample& p = ens.paths[i];
        for (std::size_t k = 0; k < p.n_times(); ++k)
            csv.row(p.times[k], static_cast<unsigned long long>(i), p.value_at(k)[0]);
    }
    csv.close();
    artifacts.push_back("paths.csv");

    const std::size_t aborted = ens.aborted_count();
    verdicts.add("aborted_paths", static_cast<double>(aborted), 0.0, aborted == 0);

    if (aborted == 0) {
        const EmpiricalLaw terminal = marginal(ens, cfg.horizon);
        double jumps = 0.0;
        for (const auto& p : ens.paths) jumps += static_cast<double>(p.jump_index.size());
        extra["terminal_mean"] = terminal.mean_1d();
        extra["terminal_stddev"] = std::sqrt(terminal.variance_1d());
        extra["mean_jump_count"] = jumps / static_cast<double>(ens.size());
    }
}

void run_solve_fpe(const ExperimentConfig& cfg, const Problem& prob, const fs::path& out,
                   Verdicts& verdicts, ordered_json& extra, std::vector<std::string>& artifacts) {
    if (!prob.additive_jumps)
        throw ConfigError("solve-fpe requires a problem with additive jumps (g(t,x,u) = u)");
    const Grid1D grid = make_grid(cfg.grid.value());
    const GridDensity1D v0 = prob.mu0_density(grid);
    const double dt = solver_dt(cfg, prob.coeffs, grid);
    const DensityTrajectory traj = solve_fpe(prob.coeffs, v0, cfg.horizon, dt, cfg.checkpoints);

    AtomicCsv dcsv(out / "densities.csv", "t,x,v");
    for (const auto& d : traj.checkpoints)
        for (int i = 0; i < d.grid.n_cells; ++i)
            dcsv.row(d.time, d.grid.center(i), d.v[static_cast<std::size_t>(i)]);
    dcsv.close();
    artifacts.push_back("densities.csv");

    ordered_json manifest = ordered_json::array();
    double worst_conservation = 0.0;
    double min_cell = 0.0;
    for (const auto& d : traj.checkpoints) {
        manifest.push_back(ordered_json{{"t", d.time},
                                        {"mass", d.mass()},
                                        {"leaked_mass", d.leaked_mass},
                                        {"first_moment", first_moment(d)}});
        worst_conservation = std::max(worst_conservation, std::fabs(d.total_with_leak() - 1.0));
        min_cell = std::min(min_cell, *std::min_element(d.v.begin(), d.v.end()));
    }
    atomic_write_text(out / "trajectory.json", manifest.dump(2) + "\n");
    artifacts.push_back("trajectory.json");

    extra["dt"] = dt;
    extra["n_checkpoints"] = traj.checkpoints.size();
    verdicts.add("mass_conservation_gap", worst_conservation, 1e-9, worst_conservation <= 1e-9);
    verdicts.add("min_cell_value", min_cell, 0.0, min_cell >= 0.0);
    const double max_leak = check_or(cfg, "max_leak", 1e-4);
    const double leak = traj.final().leaked_mass;
    verdicts.add("final_leak", leak, max_leak, leak <= max_leak);
}

void run_superpose(const ExperimentConfig& cfg, const Problem& prob, const fs::path& out,
                   int n_threads, Verdicts& verdicts, ordered_json& extra,
                   std::vector<std::string>& artifacts) {
    if (!prob.additive_jumps)
        throw ConfigError("superpose requires a problem with additive jumps (g(t,x,u) = u)");
    const Grid1D grid = make_grid(cfg.grid.value());
    const GridDensity1D v0 = prob.mu0_density(grid);
    const double dt = solver_dt(cfg, prob.coeffs, grid);
    const DensityTrajectory traj = solve_fpe(prob.coeffs, v0, cfg.horizon, dt, cfg.checkpoints);
    const std::vector<EmpiricalLaw> marginals =
        scan_marginals(prob.coeffs, prob.mu0_sampler, mc_options(cfg, n_threads), cfg.checkpoints);

    const double tol = check_or(cfg, "w1", 0.02);
    AtomicCsv csv(out / "superposition.csv", "t,w1,tolerance,mc_mean,fpe_mean,fpe_leak");
    for (std::size_t j = 0; j < cfg.checkpoints.size(); ++j) {
        const GridDensity1D& d = traj.at_time(cfg.checkpoints[j]);
        const double w1 = w1_against_density(marginals[j], d);
        csv.row(cfg.checkpoints[j], w1, tol, marginals[j].mean_1d(), d.mean(), d.leaked_mass);
        verdicts.add("w1_at_t=" + format_double(cfg.checkpoints[j]), w1, tol, w1 <= tol);
    }
    csv.close();
    artifacts.push_back("superposition.csv");
    extra["dt"] = dt;
}

void run_defect(const ExperimentConfig& cfg, const Problem& prob, const fs::path& out,
                int n_threads, Verdicts& verdicts, ordered_json& extra,
                std::vector<std::string>& artifacts) {
    const DefectConfig& dc = cfg.defect.value();
    const PathEnsemble ens =
        simulate_ensemble(prob.coeffs, prob.mu0_sampler, mc_options(cfg, n_threads));
    if (ens.aborted_count() != 0)
        throw std::runtime_error("defect: ensemble contains aborted paths");

    const std::vector<TestFunction> phis = default_bump_dictionary();
    const std::vector<PathFunctional> chis = default_chi_dictionary(dc.s);
    const double allowance = check_or(cfg, "bias_allowance", 0.01);

    const std::vector<DefectReport> reports =
        martingale_defect_batch(ens, prob.coeffs, phis, chis, dc.s, dc.t, n_threads);
    AtomicCsv csv(out / "defect.csv", "phi,chi,estimate,stderr,threshold,flagged");
    std::size_t flagged = 0;
    for (const auto& r : reports) {
        const bool f = r.exceeds(allowance);
        flagged += f ? 1 : 0;
        csv.row(r.phi_label, r.chi_label, r.estimate, r.stderr_, 3.0 * r.stderr_ + allowance,
                f ? 1 : 0);
    }
    csv.close();
    artifacts.push_back("defect.csv");
    extra["n_pairs"] = reports.size();
    verdicts.add("defect_pairs_flagged", static_cast<double>(flagged), 0.0, flagged == 0);

    if (dc.drift_offset) {
        CoefficientSet shifted = prob.coeffs;
        const double offset = *dc.drift_offset;
        shifted.drift = [b = prob.coeffs.drift, offset](double t, std::span<const double> x,
                                                        std::span<double> o) {
            b(t, x, o);
            o[0] += offset;
        };
        const std::vector<DefectReport> control =
            martingale_defect_batch(ens, shifted, phis, chis, dc.s, dc.t, n_threads);
        AtomicCsv ccsv(out / "defect_control.csv", "phi,chi,estimate,stderr,flagged");
        std::size_t detected = 0;
        for (const auto& r : control) {
            const bool f = std::fabs(r.estimate) > 3.0 * r.stderr_;
            detected += f ? 1 : 0;
            ccsv.row(r.phi_label, r.chi_label, r.estimate, r.stderr_, f ? 1 : 0);
        }
        ccsv.close();
        artifacts.push_back("defect_control.csv");
        const double rate = static_cast<double>(detected) / static_cast<double>(control.size());
        const double min_rate = check_or(cfg, "min_control_flag_rate", 0.8);
        extra["control_flag_rate"] = rate;
        verdicts.add("control_flag_rate", rate, min_rate, rate >= min_rate);
    }
}

void run_limit(const ExperimentConfig& cfg, const Problem& prob, const fs::path& out,
               int n_threads, Verdicts& verdicts, ordered_json& extra,
               std::vector<std::string>& artifacts) {
    const SequenceConfig& sc = cfg.sequence.value();
    const SequenceSpec spec =
        make_sequence_spec(sequence_kind_from_string(sc.kind), prob.coeffs, sc.n_values);
    const ConvergenceTable table =
        limit_experiment(spec, prob.mu0_sampler, cfg.horizon, cfg.n_steps.value(),
                         static_cast<std::size_t>(cfg.n_paths.value()), cfg.checkpoints, cfg.seed,
                         n_threads);

    AtomicCsv csv(out / "convergence.csv", "n,t,w1,noise_floor");
    for (const auto& r : table.rows) csv.row(r.n, r.time, r.w1, r.noise_floor);
    csv.close();
    artifacts.push_back("convergence.csv");

    ordered_json manifest;
    manifest["sequence_kind"] = table.kind;
    manifest["n_values"] = sc.n_values;
    manifest["n_paths"] = table.n_paths;
    manifest["n_steps"] = table.n_steps;
    manifest["master_seed"] = table.master_seed;
    ordered_json assumptions = ordered_json::array();
    for (const auto& a : table.assumption_log) assumptions.push_back(a);
    for (const auto& a : prob.assumptions) assumptions.push_back(a);
    manifest["assumptions"] = assumptions;
    atomic_write_text(out / "manifest.json", manifest.dump(2) + "\n");
    artifacts.push_back("manifest.json");

    const double floor_factor = check_or(cfg, "floor_factor", 3.0);
    for (std::size_t j = 0; j < cfg.checkpoints.size(); ++j) {
        const double t = cfg.checkpoints[j];
        double prev = std::numeric_limits<double>::infinity();
        bool monotone = true;
        double last_w1 = 0.0, floor = 0.0;
        for (const auto& r : table.rows) {
            if (r.time != t) continue;
            monotone = monotone && r.w1 <= prev + r.noise_floor;
            prev = r.w1;
            last_w1 = r.w1;
            floor = r.noise_floor;
        }
        verdicts.add("monotone_up_to_noise_t=" + format_double(t), monotone ? 1.0 : 0.0, 1.0,
                     monotone);
        verdicts.add("final_w1_vs_floor_t=" + format_double(t), last_w1, floor_factor * floor,
                     last_w1 <= floor_factor * floor);
    }
    extra["noise_floor_max"] = [&] {
        double m = 0.0;
        for (const auto& r : table.rows) m = std::max(m, r.noise_floor);
        return m;
    }();
}

void run_moment_bound(const ExperimentConfig& cfg, const Problem& prob, const fs::path& out,
                      int n_threads, Verdicts& verdicts, ordered_json& extra,
                      std::vector<std::string>& artifacts) {
    const PathEnsemble ens =
        simulate_ensemble(prob.coeffs, prob.mu0_sampler, mc_options(cfg, n_threads));
    const BoundReport rep = moment_bound_check(ens, prob.mu0_first_moment, prob.coeffs.c1,
                                               prob.coeffs.c2, prob.coeffs.nu.total_mass());
    ordered_json j;
    j["kappa_bdg"] = rep.kappa_bdg;
    j["c_bundled"] = rep.c_bundled;
    j["t0"] = rep.t0;
    j["doubling_exponent"] = rep.doubling_exponent;
    j["bound"] = rep.bound;
    j["empirical_sup_moment"] = rep.empirical_sup_moment;
    j["slack"] = rep.slack;
    j["pass"] = rep.pass;
    atomic_write_text(out / "moment_bound.json", j.dump(2) + "\n");
    artifacts.push_back("moment_bound.json");

    extra["bound"] = rep.bound;
    extra["empirical_sup_moment"] = rep.empirical_sup_moment;
    verdicts.add("moment_bound_holds", rep.empirical_sup_moment, rep.bound, rep.pass);
    const double min_slack = check_or(cfg, "min_slack", 1.5);
    verdicts.add("moment_bound_slack", rep.slack, min_slack, rep.slack >= min_slack);
}

} // namespace

std::vector<PathFunctional> default_chi_dictionary(double s) {
    std::vector<PathFunctional> chis;
    chis.push_back(constant_functional(1.0, s));
    chis.push_back(sigmoid_product_functional({{s, 0.0}}, 2.0, s));
    chis.push_back(sigmoid_product_functional({{0.5 * s, -0.5}, {s, 0.5}}, 3.0, s));
    return chis;
}

RunResult run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                         int n_threads) {
    fs::create_directories(out_dir);

    if (!catalog_has(cfg.problem))
        throw ConfigError("unknown problem '" + cfg.problem + "' (see `catalog`)");
    Problem prob;
    try {
        prob = make_problem(cfg.problem, cfg.params);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    Verdicts verdicts;
    ordered_json extra;
    std::vector<std::string> artifacts;

    if (cfg.experiment == "simulate")
        run_simulate(cfg, prob, out_dir, n_threads, verdicts, extra, artifacts);
    else if (cfg.experiment == "solve-fpe")
        run_solve_fpe(cfg, prob, out_dir, verdicts, extra, artifacts);
    else if (cfg.experiment == "superpose")
        run_superpose(cfg, prob, out_dir, n_threads, verdicts, extra, artifacts);
    else if (cfg.experiment == "defect")
        run_defect(cfg, prob, out_dir, n_threads, verdicts, extra, artifacts);
    else if (cfg.experiment == "limit")
        run_limit(cfg, prob, out_dir, n_threads, verdicts, extra, artifacts);
    else if (cfg.experiment == "moment-bound")
        run_moment_bound(cfg, prob, out_dir, n_threads, verdicts, extra, artifacts);
    else
        throw ConfigError("unknown experiment kind '" + cfg.experiment + "'");

    atomic_write_text(out_dir / "repro.json", cfg.canonical_json().dump(2) + "\n");
    artifacts.push_back("repro.json");

    RunResult result;
    result.summary["version"] = kVersion;
    result.summary["experiment"] = cfg.experiment;
    result.summary["problem"] = cfg.problem;
    result.summary["config"] = cfg.canonical_json();
    {
        ordered_json assumptions = ordered_json::array();
        for (const auto& a : prob.assumptions) assumptions.push_back(a);
        result.summary["assumptions"] = assumptions;
    }
    result.summary["results"] = extra;
    result.summary["verdicts"] = verdicts.rows;
    result.summary["all_pass"] = verdicts.all_pass;
    atomic_write_text(out_dir / "summary.json", result.summary.dump(2) + "\n");

    result.exit_code = verdicts.all_pass ? 0 : 1;
    return result;
}

} // namespace jumpflow

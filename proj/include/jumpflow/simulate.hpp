#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "jumpflow/coefficients.hpp"
#include "jumpflow/empirical.hpp"
#include "jumpflow/jumps.hpp"
#include "jumpflow/path.hpp"

namespace jumpflow {

// Draws an initial state into `out` using the given stream. Must be a
// deterministic function of the stream state.
using InitialSampler = std::function<void(CounterRng&, std::span<double>)>;

InitialSampler dirac_sampler(std::vector<double> point);
InitialSampler gaussian_sampler_1d(double mean, double stddev);

// Jump-adapted Euler scheme: the time grid is the union of the uniform
// grid {k T / n_steps} and the sampled jump times. Between consecutive
// grid times,
//   X <- X + b(t,X) dt + sigma(t,X) sqrt(dt) Z,   Z ~ N(0, I_m),
// and at a jump time the drift/diffusion update is applied first, then
//   X <- X- + gamma * g(t, X-, u).
// A non-finite state aborts the path and records a diagnostic.
PathSample simulate_path(const CoefficientSet& cs, std::span<const double> x0,
                         double horizon, int n_steps, CounterRng rng);

struct EnsembleOptions {
    double horizon = 1.0;
    int n_steps = 1;
    std::size_t n_paths = 1;
    std::uint64_t master_seed = 0;
    int n_threads = 1;
};

// N independent paths; path i consumes only the substream
// (master_seed, i), so the result is identical under any thread count.
PathEnsemble simulate_ensemble(const CoefficientSet& cs, const InitialSampler& mu0,
                               const EnsembleOptions& opt);

// Marginal law P o e_t^{-1}: per path, the right-limit value at the
// last grid time <= t.
EmpiricalLaw marginal(const PathEnsemble& ensemble, double t);

// Streaming variant: simulate paths one at a time and hand each to the
// visitor (called from worker threads; order not specified). Used where
// whole ensembles would not fit comfortably in memory.
void scan_ensemble(const CoefficientSet& cs, const InitialSampler& mu0,
                   const EnsembleOptions& opt,
                   const std::function<void(std::size_t, const PathSample&)>& visit);

// Marginals at several times in one streaming pass.
std::vector<EmpiricalLaw> scan_marginals(const CoefficientSet& cs, const InitialSampler& mu0,
                                         const EnsembleOptions& opt,
                                         std::span<const double> times);

} // namespace jumpflow

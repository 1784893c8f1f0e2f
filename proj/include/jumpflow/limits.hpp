#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jumpflow/coefficients.hpp"
#include "jumpflow/mollify.hpp"
#include "jumpflow/simulate.hpp"

namespace jumpflow {

// Coefficient-sequence constructions whose laws converge to the target:
//   Mollify:       b^n, a^n mollified at scale 1/n, gamma^n = n gamma/(n+1)
//   KillJumps:     gamma^n = gamma/n, drift/diffusion fixed
//   KillDiffusion: sigma^n = sigma/n, gamma^n = n gamma/(n+1)
//   KillBoth:      sigma^n = 1/n (identity), gamma^n = gamma/n
enum class SequenceKind { Mollify, KillJumps, KillDiffusion, KillBoth };

const char* to_string(SequenceKind k);
SequenceKind sequence_kind_from_string(const std::string& name);

struct SequenceSpec {
    SequenceKind kind = SequenceKind::Mollify;
    std::vector<int> n_values; // strictly increasing
    CoefficientSet base;
    CoefficientSet target;
    int mollifier_nodes = 32;

    void validate() const;
};

// Derives the limiting coefficient set for the given kind.
SequenceSpec make_sequence_spec(SequenceKind kind, const CoefficientSet& base,
                                std::vector<int> n_values, int mollifier_nodes = 32);

std::vector<CoefficientSet> build_sequence(const SequenceSpec& spec);
CoefficientSet sequence_member(const SequenceSpec& spec, int n);

// Tensor midpoint quadrature of
//   Integral_{t_window} Integral_{box} (|b^n - b| + |a^n - a|) dx dt.
double l1loc_discrepancy(const CoefficientSet& cs_n, const CoefficientSet& cs, double x_lo,
                         double x_hi, double t_lo, double t_hi, int n_quad);

struct ConvergenceRow {
    int n = 0;
    double time = 0.0;
    double w1 = 0.0;
    double noise_floor = 0.0; // W1 of two independent target ensembles
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    std::string kind;
    std::size_t n_paths = 0;
    int n_steps = 0;
    std::uint64_t master_seed = 0;
    std::vector<std::string> assumption_log;
};

// Simulates the target law once (plus an independent replica for the
// noise floor) and each sequence member with seeds derived from
// master_seed; reports W1 between marginals at every checkpoint.
ConvergenceTable limit_experiment(const SequenceSpec& spec, const InitialSampler& mu0, double horizon,
                                  int n_steps, std::size_t n_paths,
                                  std::span<const double> checkpoints, std::uint64_t master_seed,
                                  int n_threads = 1);

} // namespace jumpflow

#include "jumpflow/limits.hpp"

#include <cmath>
#include <stdexcept>

#include "jumpflow/wasserstein.hpp"

namespace jumpflow {

const char* to_string(SequenceKind k) {
    switch (k) {
        case SequenceKind::Mollify: return "mollify";
        case SequenceKind::KillJumps: return "kill-jumps";
        case SequenceKind::KillDiffusion: return "kill-diffusion";
        case SequenceKind::KillBoth: return "kill-both";
    }
    throw std::invalid_argument("unknown sequence kind");
}

SequenceKind sequence_kind_from_string(const std::string& name) {
    if (name == "mollify") return SequenceKind::Mollify;
    if (name == "kill-jumps") return SequenceKind::KillJumps;
    if (name == "kill-diffusion") return SequenceKind::KillDiffusion;
    if (name == "kill-both") return SequenceKind::KillBoth;
    throw std::invalid_argument("unknown sequence kind: " + name);
}

void SequenceSpec::validate() const {
    if (n_values.empty()) throw std::invalid_argument("SequenceSpec: empty n list");
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < 1) throw std::invalid_argument("SequenceSpec: n values must be >= 1");
        if (i > 0 && n_values[i] <= n_values[i - 1])
            throw std::invalid_argument("SequenceSpec: n values must be strictly increasing");
    }
}

namespace {

CoefficientSet with_scaled_diffusion(const CoefficientSet& base, double factor) {
    CoefficientSet out = base;
    out.diffusion = [sig = base.diffusion, factor](double t, std::span<const double> x,
                                                   std::span<double> o) {
        sig(t, x, o);
        for (auto& v : o) v *= factor;
    };
    return out;
}

CoefficientSet with_constant_diffusion(const CoefficientSet& base, double value) {
    CoefficientSet out = base;
    const int d = base.dim, m = base.noise_dim;
    out.diffusion = [value, d, m](double, std::span<const double>, std::span<double> o) {
        for (auto& v : o) v = 0.0;
        for (int r = 0; r < std::min(d, m); ++r)
            o[static_cast<std::size_t>(r) * m + r] = value;
    };
    return out;
}

CoefficientSet without_jumps(const CoefficientSet& base) {
    CoefficientSet out = base;
    out.jump_scale = 0.0;
    return out;
}

} // namespace

SequenceSpec make_sequence_spec(SequenceKind kind, const CoefficientSet& base,
                                std::vector<int> n_values, int mollifier_nodes) {
    SequenceSpec spec;
    spec.kind = kind;
    spec.n_values = std::move(n_values);
    spec.base = base;
    spec.mollifier_nodes = mollifier_nodes;
    switch (kind) {
        case SequenceKind::Mollify:
            spec.target = base;
            break;
        case SequenceKind::KillJumps:
            spec.target = without_jumps(base);
            break;
        case SequenceKind::KillDiffusion:
            spec.target = with_constant_diffusion(base, 0.0);
            break;
        case SequenceKind::KillBoth:
            spec.target = without_jumps(with_constant_diffusion(base, 0.0));
            break;
    }
    spec.validate();
    return spec;
}

CoefficientSet sequence_member(const SequenceSpec& spec, int n) {
    if (n < 1) throw std::invalid_argument("sequence_member: n >= 1 required");
    switch (spec.kind) {
        case SequenceKind::Mollify: {
            CoefficientSet cs = mollify_coefficients(spec.base, MollifierScheme::make(n, spec.mollifier_nodes));
            cs.jump_scale = gamma_seq(spec.base.jump_scale, n);
            return cs;
        }
        case SequenceKind::KillJumps: {
            CoefficientSet cs = spec.base;
            cs.jump_scale = spec.base.jump_scale / static_cast<double>(n);
            return cs;
        }
        case SequenceKind::KillDiffusion: {
            CoefficientSet cs = with_scaled_diffusion(spec.base, 1.0 / static_cast<double>(n));
            cs.jump_scale = gamma_seq(spec.base.jump_scale, n);
            return cs;
        }
        case SequenceKind::KillBoth: {
            CoefficientSet cs = with_constant_diffusion(spec.base, 1.0 / static_cast<double>(n));
            cs.jump_scale = spec.base.jump_scale / static_cast<double>(n);
            return cs;
        }
    }
    throw std::invalid_argument("sequence_member: unknown kind");
}

std::vector<CoefficientSet> build_sequence(const SequenceSpec& spec) {
    spec.validate();
    std::vector<CoefficientSet> out;
    out.reserve(spec.n_values.size());
    for (int n : spec.n_values) out.push_back(sequence_member(spec, n));
    return out;
}

double l1loc_discrepancy(const CoefficientSet& cs_n, const CoefficientSet& cs, double x_lo,
                         double x_hi, double t_lo, double t_hi, int n_quad) {
    if (cs_n.dim != 1 || cs.dim != 1)
        throw std::invalid_argument("l1loc_discrepancy: 1-D coefficient sets only");
    if (!(x_lo < x_hi) || !(t_lo <= t_hi))
        throw std::invalid_argument("l1loc_discrepancy: bad box/window");
    if (n_quad < 16) throw std::invalid_argument("l1loc_discrepancy: n_quad >= 16 required");

    const int nt = 8; // midpoint nodes in time
    const double hx = (x_hi - x_lo) / n_quad;
    const double ht = (t_hi - t_lo) / nt;
    double acc = 0.0;
    for (int it = 0; it < nt; ++it) {
        const double t = t_lo + (it + 0.5) * ht;
        double slice = 0.0;
        for (int ix = 0; ix < n_quad; ++ix) {
            const double x = x_lo + (ix + 0.5) * hx;
            slice += std::fabs(drift_1d(cs_n, t, x) - drift_1d(cs, t, x)) +
                     std::fabs(a_1d(cs_n, t, x) - a_1d(cs, t, x));
        }
        acc += slice * hx * (t_hi > t_lo ? ht : 1.0);
    }
    if (t_hi == t_lo) acc /= nt; // degenerate window: spatial integral only
    return acc;
}

ConvergenceTable limit_experiment(const SequenceSpec& spec, const InitialSampler& mu0, double horizon,
                                  int n_steps, std::size_t n_paths,
                                  std::span<const double> checkpoints, std::uint64_t master_seed,
                                  int n_threads) {
    spec.validate();
    if (checkpoints.empty()) throw std::invalid_argument("limit_experiment: no checkpoints");

    ConvergenceTable table;
    table.kind = to_string(spec.kind);
    table.n_paths = n_paths;
    table.n_steps = n_steps;
    table.master_seed = master_seed;
    table.assumption_log.push_back(
        "uniform marginal density bound of the n-sequence assumed, not verified");

    EnsembleOptions opt;
    opt.horizon = horizon;
    opt.n_steps = n_steps;
    opt.n_paths = n_paths;
    opt.n_threads = n_threads;

    opt.master_seed = derive_seed(master_seed, 1000);
    const std::vector<EmpiricalLaw> target = scan_marginals(spec.target, mu0, opt, checkpoints);
    opt.master_seed = derive_seed(master_seed, 1001);
    const std::vector<EmpiricalLaw> replica = scan_marginals(spec.target, mu0, opt, checkpoints);

    std::vector<double> floor(checkpoints.size());
    for (std::size_t j = 0; j < checkpoints.size(); ++j)
        floor[j] = wasserstein1(target[j], replica[j]);

    for (std::size_t k = 0; k < spec.n_values.size(); ++k) {
        const int n = spec.n_values[k];
        const CoefficientSet cs_n = sequence_member(spec, n);
        opt.master_seed = derive_seed(master_seed, 2000 + k);
        const std::vector<EmpiricalLaw> laws = scan_marginals(cs_n, mu0, opt, checkpoints);
        for (std::size_t j = 0; j < checkpoints.size(); ++j) {
            ConvergenceRow row;
            row.n = n;
            row.time = checkpoints[j];
            row.w1 = wasserstein1(laws[j], target[j]);
            row.noise_floor = floor[j];
            table.rows.push_back(row);
        }
    }
    return table;
}

} // namespace jumpflow

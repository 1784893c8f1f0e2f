#include "jumpflow/simulate.hpp"

#include <atomic>
#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace jumpflow {

namespace {

constexpr double kStateCap = 1e150; // beyond this, norms would overflow

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h = 0xCBF29CE484222325ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001B3ULL;
    }
    return h;
}

bool state_ok(std::span<const double> x) {
    for (double c : x)
        if (!std::isfinite(c) || std::fabs(c) > kStateCap) return false;
    return true;
}

} // namespace

InitialSampler dirac_sampler(std::vector<double> point) {
    return [pt = std::move(point)](CounterRng&, std::span<double> out) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = pt.at(i);
    };
}

InitialSampler gaussian_sampler_1d(double mean, double stddev) {
    if (!(stddev >= 0.0)) throw std::invalid_argument("gaussian_sampler_1d: stddev must be >= 0");
    return [mean, stddev](CounterRng& rng, std::span<double> out) {
        out[0] = mean + stddev * rng.next_normal();
    };
}

PathSample simulate_path(const CoefficientSet& cs, std::span<const double> x0,
                         double horizon, int n_steps, CounterRng rng) {
    if (n_steps < 1) throw std::invalid_argument("simulate_path: n_steps >= 1 required");
    if (!(horizon > 0.0)) throw std::invalid_argument("simulate_path: horizon must be > 0");
    const int d = cs.dim;
    const int m = cs.noise_dim;
    if (static_cast<int>(x0.size()) != d)
        throw std::invalid_argument("simulate_path: x0 dimension mismatch");

    // Jumps are drawn first so the uniform grid never perturbs the jump
    // stream layout.
    JumpList jumps = sample_jumps(cs.nu, horizon, rng);

    PathSample path;
    path.dim = d;
    const std::size_t n_grid = static_cast<std::size_t>(n_steps) + 1;
    path.times.reserve(n_grid + jumps.events.size());
    path.jump_index.reserve(jumps.events.size());

    // Merge the uniform grid with the jump times. A jump landing exactly
    // on a grid point (probability zero) collapses into one grid entry.
    std::vector<std::size_t> jump_atom; // atom index per jump entry, aligned with jump_index
    {
        std::size_t k = 0, j = 0;
        while (k < n_grid || j < jumps.events.size()) {
            const double tg = k < n_grid
                                  ? horizon * (static_cast<double>(k) / n_steps)
                                  : std::numeric_limits<double>::infinity();
            const double tj = j < jumps.events.size() ? jumps.events[j].time
                                                      : std::numeric_limits<double>::infinity();
            if (tj < tg) {
                path.times.push_back(tj);
                path.jump_index.push_back(static_cast<std::uint32_t>(path.times.size() - 1));
                jump_atom.push_back(jumps.events[j].atom_index);
                ++j;
            } else {
                path.times.push_back(tg);
                if (tj == tg) {
                    path.jump_index.push_back(static_cast<std::uint32_t>(path.times.size() - 1));
                    jump_atom.push_back(jumps.events[j].atom_index);
                    ++j;
                }
                ++k;
            }
        }
    }

    const std::size_t n_times = path.times.size();
    path.values.resize(n_times * static_cast<std::size_t>(d));
    path.pre_jump_values.reserve(path.jump_index.size() * static_cast<std::size_t>(d));

    std::vector<double> x(x0.begin(), x0.end());
    std::vector<double> bx(d), sig(static_cast<std::size_t>(d) * m), z(m), g(d);

    auto record = [&](std::size_t i) {
        std::memcpy(path.values.data() + i * static_cast<std::size_t>(d), x.data(),
                    sizeof(double) * static_cast<std::size_t>(d));
    };

    if (!state_ok(x)) {
        path.aborted = true;
        path.abort_reason = "non-finite initial state";
        path.times.resize(1);
        path.values.resize(static_cast<std::size_t>(d));
        path.jump_index.clear();
        return path;
    }
    record(0);

    std::size_t next_jump = 0; // cursor into path.jump_index
    for (std::size_t i = 1; i < n_times; ++i) {
        const double t_prev = path.times[i - 1];
        const double t_next = path.times[i];
        const double dt = t_next - t_prev;
        const double sdt = std::sqrt(dt);

        cs.drift(t_prev, x, bx);
        cs.diffusion(t_prev, x, sig);
        for (int c = 0; c < m; ++c) z[c] = rng.next_normal();
        for (int r = 0; r < d; ++r) {
            double noise = 0.0;
            const double* row = sig.data() + static_cast<std::size_t>(r) * m;
            for (int c = 0; c < m; ++c) noise += row[c] * z[c];
            x[static_cast<std::size_t>(r)] += bx[static_cast<std::size_t>(r)] * dt + noise * sdt;
        }

        const bool is_jump =
            next_jump < path.jump_index.size() && path.jump_index[next_jump] == i;
        if (is_jump) {
            for (int r = 0; r < d; ++r) path.pre_jump_values.push_back(x[static_cast<std::size_t>(r)]);
            const auto& atom = cs.nu.atom(jump_atom[next_jump]);
            cs.jump_amplitude(t_next, x, atom.mark, g);
            for (int r = 0; r < d; ++r) x[static_cast<std::size_t>(r)] += cs.jump_scale * g[static_cast<std::size_t>(r)];
            ++next_jump;
        }

        if (!state_ok(x)) {
            std::ostringstream os;
            os << "state overflow at t=" << t_next;
            path.aborted = true;
            path.abort_reason = os.str();
            path.times.resize(i);
            path.values.resize(i * static_cast<std::size_t>(d));
            path.jump_index.resize(next_jump - (is_jump ? 1 : 0));
            path.pre_jump_values.resize(path.jump_index.size() * static_cast<std::size_t>(d));
            return path;
        }
        record(i);
    }
    return path;
}

namespace {

std::uint64_t ensemble_fingerprint(const CoefficientSet& cs, const EnsembleOptions& opt) {
    std::uint64_t h = fnv1a(&opt.horizon, sizeof opt.horizon);
    h = fnv1a(&opt.n_steps, sizeof opt.n_steps, h);
    h = fnv1a(&opt.n_paths, sizeof opt.n_paths, h);
    h = fnv1a(&opt.master_seed, sizeof opt.master_seed, h);
    h = fnv1a(&cs.dim, sizeof cs.dim, h);
    h = fnv1a(&cs.jump_scale, sizeof cs.jump_scale, h);
    const double mass = cs.nu.total_mass();
    h = fnv1a(&mass, sizeof mass, h);
    return h;
}

void parallel_paths(const CoefficientSet& cs, const InitialSampler& mu0,
                    const EnsembleOptions& opt,
                    const std::function<void(std::size_t, PathSample&&)>& sink) {
    if (opt.n_paths < 1) throw std::invalid_argument("simulate_ensemble: n_paths >= 1 required");
    if (!mu0) throw std::invalid_argument("simulate_ensemble: initial sampler required");
    const int n_threads = std::max(1, opt.n_threads);

    std::vector<double> x0_scratch; // per-thread copies below
    auto run_one = [&](std::size_t i, std::vector<double>& x0) {
        CounterRng rng = CounterRng::substream(opt.master_seed, i);
        mu0(rng, x0);
        sink(i, simulate_path(cs, x0, opt.horizon, opt.n_steps, rng));
    };

    if (n_threads == 1 || opt.n_paths == 1) {
        std::vector<double> x0(cs.dim);
        for (std::size_t i = 0; i < opt.n_paths; ++i) run_one(i, x0);
        return;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        std::vector<double> x0(cs.dim);
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= opt.n_paths) break;
            run_one(i, x0);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace

PathEnsemble simulate_ensemble(const CoefficientSet& cs, const InitialSampler& mu0,
                               const EnsembleOptions& opt) {
    PathEnsemble ens;
    ens.dim = cs.dim;
    ens.horizon = opt.horizon;
    ens.master_seed = opt.master_seed;
    ens.config_fingerprint = ensemble_fingerprint(cs, opt);
    ens.paths.resize(opt.n_paths);
    parallel_paths(cs, mu0, opt,
                   [&](std::size_t i, PathSample&& p) { ens.paths[i] = std::move(p); });
    return ens;
}

void scan_ensemble(const CoefficientSet& cs, const InitialSampler& mu0,
                   const EnsembleOptions& opt,
                   const std::function<void(std::size_t, const PathSample&)>& visit) {
    parallel_paths(cs, mu0, opt,
                   [&](std::size_t i, PathSample&& p) { visit(i, p); });
}

EmpiricalLaw marginal(const PathEnsemble& ensemble, double t) {
    if (t < 0.0 || t > ensemble.horizon)
        throw std::out_of_range("marginal: t outside [0, horizon]");
    EmpiricalLaw law;
    law.dim = ensemble.dim;
    law.time = t;
    law.source_fingerprint = ensemble.config_fingerprint;
    law.samples.reserve(ensemble.paths.size() * static_cast<std::size_t>(ensemble.dim));
    for (const auto& p : ensemble.paths) {
        if (p.aborted)
            throw std::runtime_error("marginal: ensemble contains aborted paths");
        const auto v = p.state_at(t);
        law.samples.insert(law.samples.end(), v.begin(), v.end());
    }
    law.validate();
    return law;
}

std::vector<EmpiricalLaw> scan_marginals(const CoefficientSet& cs, const InitialSampler& mu0,
                                         const EnsembleOptions& opt,
                                         std::span<const double> times) {
    for (double t : times)
        if (t < 0.0 || t > opt.horizon)
            throw std::out_of_range("scan_marginals: time outside [0, horizon]");
    const std::uint64_t fp = 0; // per-call streaming laws carry no ensemble fingerprint
    std::vector<EmpiricalLaw> out(times.size());
    for (std::size_t j = 0; j < times.size(); ++j) {
        out[j].dim = cs.dim;
        out[j].time = times[j];
        out[j].source_fingerprint = fp;
        out[j].samples.resize(opt.n_paths * static_cast<std::size_t>(cs.dim));
    }
    std::atomic<std::size_t> aborted{0};
    scan_ensemble(cs, mu0, opt, [&](std::size_t i, const PathSample& p) {
        if (p.aborted) {
            aborted.fetch_add(1);
            return;
        }
        for (std::size_t j = 0; j < times.size(); ++j) {
            const auto v = p.state_at(times[j]);
            std::memcpy(out[j].samples.data() + i * static_cast<std::size_t>(cs.dim), v.data(),
                        sizeof(double) * v.size());
        }
    });
    if (aborted.load() != 0)
        throw std::runtime_error("scan_marginals: " + std::to_string(aborted.load()) +
                                 " aborted path(s)");
    for (auto& law : out) law.validate();
    return out;
}

} // namespace jumpflow

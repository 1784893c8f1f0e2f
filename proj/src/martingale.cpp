#include "jumpflow/martingale.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace jumpflow {

PathFunctional constant_functional(double value, double cutoff) {
    PathFunctional f;
    std::ostringstream os;
    os << "const(" << value << ")";
    f.label = os.str();
    f.cutoff = cutoff;
    f.bound = std::fabs(value);
    f.eval = [value](const PathSample&) { return value; };
    return f;
}

PathFunctional sigmoid_product_functional(std::vector<std::pair<double, double>> time_centers,
                                          double scale, double cutoff) {
    if (time_centers.empty() || time_centers.size() > 3)
        throw std::invalid_argument("sigmoid_product_functional: 1..3 evaluation times");
    for (const auto& [tj, _] : time_centers)
        if (tj < 0.0 || tj > cutoff)
            throw std::invalid_argument("sigmoid_product_functional: times must lie in [0, cutoff]");
    PathFunctional f;
    std::ostringstream os;
    os << "sig(";
    for (std::size_t j = 0; j < time_centers.size(); ++j)
        os << (j ? "," : "") << "t=" << time_centers[j].first << "@" << time_centers[j].second;
    os << ",k=" << scale << ")";
    f.label = os.str();
    f.cutoff = cutoff;
    f.bound = 1.0;
    f.eval = [tc = std::move(time_centers), scale](const PathSample& p) {
        double prod = 1.0;
        for (const auto& [tj, cj] : tc) {
            const double w = p.state_at(tj)[0];
            prod *= 1.0 / (1.0 + std::exp(-scale * (w - cj)));
        }
        return prod;
    };
    return f;
}

std::vector<DefectReport> martingale_defect_batch(const PathEnsemble& ens,
                                                  const CoefficientSet& cs,
                                                  std::span<const TestFunction> phis,
                                                  std::span<const PathFunctional> chis, double s,
                                                  double t, int n_threads) {
    if (!(0.0 <= s && s < t && t <= ens.horizon))
        throw std::invalid_argument("martingale_defect: need 0 <= s < t <= horizon");
    if (cs.dim != 1 || ens.dim != 1)
        throw std::invalid_argument("martingale_defect: 1-D ensembles required");
    if (phis.empty() || chis.empty())
        throw std::invalid_argument("martingale_defect: empty dictionary");
    for (const auto& chi : chis)
        if (chi.cutoff > s + 1e-12)
            throw std::invalid_argument("martingale_defect: chi cutoff must not exceed s");
    if (ens.aborted_count() != 0)
        throw std::runtime_error("martingale_defect: ensemble contains aborted paths");

    const std::size_t n_paths = ens.size();
    const std::size_t n_phi = phis.size();
    const std::size_t n_chi = chis.size();
    const std::size_t n_pairs = n_phi * n_chi;

    // Per-path contributions land in fixed slots so the sequential
    // reduction below is identical under any thread count.
    std::vector<double> contrib(n_paths * n_pairs);

    auto process_path = [&](std::size_t ip) {
        const PathSample& p = ens.paths[ip];
        // quadrature nodes: s, the path grid inside (s,t), then t
        const std::size_t is = p.index_at(s);
        const std::size_t it = p.index_at(t);
        std::vector<double> node_time;
        std::vector<double> node_x;
        node_time.reserve(it - is + 2);
        node_x.reserve(it - is + 2);
        node_time.push_back(s);
        node_x.push_back(p.value_at(is)[0]);
        for (std::size_t i = is + 1; i <= it; ++i) {
            if (p.times[i] > s && p.times[i] < t) {
                node_time.push_back(p.times[i]);
                node_x.push_back(p.value_at(i)[0]);
            }
        }
        node_time.push_back(t);
        node_x.push_back(p.value_at(it)[0]);

        const std::size_t n_nodes = node_time.size();
        const std::size_t n_atoms = cs.nu.size();
        // phi-independent data per node: drift, a, shifted positions
        std::vector<double> nb(n_nodes), na(n_nodes), nshift(n_nodes * n_atoms);
        for (std::size_t q = 0; q < n_nodes; ++q) {
            nb[q] = drift_1d(cs, node_time[q], node_x[q]);
            na[q] = a_1d(cs, node_time[q], node_x[q]);
            for (std::size_t k = 0; k < n_atoms; ++k)
                nshift[q * n_atoms + k] =
                    node_x[q] +
                    cs.jump_scale * jump_amp_1d(cs, node_time[q], node_x[q], cs.nu.atom(k).mark[0]);
        }

        std::vector<double> chi_vals(n_chi);
        for (std::size_t c = 0; c < n_chi; ++c) {
            const double val = chis[c].eval(p);
            if (std::fabs(val) > chis[c].bound + 1e-12)
                throw std::logic_error("martingale_defect: functional exceeded its declared bound");
            chi_vals[c] = val;
        }

        const double x_s = node_x.front();
        const double x_t = node_x.back();
        for (std::size_t f = 0; f < n_phi; ++f) {
            const TestFunction& phi = phis[f];
            double integral = 0.0, prev = 0.0;
            for (std::size_t q = 0; q < n_nodes; ++q) {
                double g = nb[q] * phi.deriv1(node_x[q]) + na[q] * phi.deriv2(node_x[q]);
                if (n_atoms != 0) {
                    const double phi_x = phi.value(node_x[q]);
                    for (std::size_t k = 0; k < n_atoms; ++k)
                        g += cs.nu.atom(k).weight * (phi.value(nshift[q * n_atoms + k]) - phi_x);
                }
                if (q > 0) integral += 0.5 * (node_time[q] - node_time[q - 1]) * (prev + g);
                prev = g;
            }
            const double defect = phi.value(x_t) - phi.value(x_s) - integral;
            for (std::size_t c = 0; c < n_chi; ++c)
                contrib[ip * n_pairs + f * n_chi + c] = defect * chi_vals[c];
        }
    };

    const int workers = std::max(1, n_threads);
    if (workers == 1) {
        for (std::size_t i = 0; i < n_paths; ++i) process_path(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto work = [&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n_paths) break;
                process_path(i);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    std::vector<DefectReport> out(n_pairs);
    for (std::size_t f = 0; f < n_phi; ++f) {
        for (std::size_t c = 0; c < n_chi; ++c) {
            double sum = 0.0;
            for (std::size_t ip = 0; ip < n_paths; ++ip) sum += contrib[ip * n_pairs + f * n_chi + c];
            const double mean = sum / static_cast<double>(n_paths);
            double ss = 0.0;
            for (std::size_t ip = 0; ip < n_paths; ++ip) {
                const double d = contrib[ip * n_pairs + f * n_chi + c] - mean;
                ss += d * d;
            }
            DefectReport& r = out[f * n_chi + c];
            r.estimate = mean;
            r.stderr_ = n_paths > 1 ? std::sqrt(ss / (static_cast<double>(n_paths) *
                                                      static_cast<double>(n_paths - 1)))
                                    : 0.0;
            r.n_paths = n_paths;
            r.phi_label = phis[f].label;
            r.chi_label = chis[c].label;
            r.s = s;
            r.t = t;
        }
    }
    return out;
}

DefectReport martingale_defect(const PathEnsemble& ens, const CoefficientSet& cs,
                               const TestFunction& phi, const PathFunctional& chi, double s,
                               double t, int n_threads) {
    return martingale_defect_batch(ens, cs, {&phi, 1}, {&chi, 1}, s, t, n_threads).front();
}

} // namespace jumpflow

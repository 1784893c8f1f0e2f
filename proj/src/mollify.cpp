#include "jumpflow/mollify.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace jumpflow {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    const int mid = (n + 1) / 2;
    for (int i = 0; i < mid; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
}

MollifierScheme MollifierScheme::make(int n, int n_nodes) {
    if (n < 1) throw std::invalid_argument("MollifierScheme: n >= 1 required");
    if (n_nodes < 4) throw std::invalid_argument("MollifierScheme: n_nodes >= 4 required");
    MollifierScheme s;
    s.n_ = n;
    std::vector<double> gl_w;
    gauss_legendre(n_nodes, s.nodes_, gl_w);
    auto bump = [](double v) {
        const double q = 1.0 - v * v;
        return q > 0.0 ? std::exp(-1.0 / q) : 0.0;
    };
    double raw = 0.0;
    s.weights_.resize(s.nodes_.size());
    for (std::size_t q = 0; q < s.nodes_.size(); ++q) {
        s.weights_[q] = gl_w[q] * bump(s.nodes_[q]);
        raw += s.weights_[q];
    }
    s.normalization_ = 1.0 / raw;
    for (auto& w : s.weights_) w *= s.normalization_;
    return s;
}

double MollifierScheme::weight_sum() const noexcept {
    double sum = 0.0;
    for (double w : weights_) sum += w;
    return sum;
}

double MollifierScheme::convolve(const std::function<double(double)>& f, double x) const {
    const double inv_n = 1.0 / static_cast<double>(n_);
    double acc = 0.0;
    for (std::size_t q = 0; q < nodes_.size(); ++q)
        acc += weights_[q] * f(x - nodes_[q] * inv_n);
    return acc;
}

CoefficientSet mollify_coefficients(const CoefficientSet& base, const MollifierScheme& scheme) {
    if (base.dim != 1 || base.noise_dim != 1)
        throw std::invalid_argument("mollify_coefficients: 1-D coefficient sets only");
    if (!base.drift || !base.diffusion)
        throw std::invalid_argument("mollify_coefficients: base drift/diffusion required");

    CoefficientSet out = base; // inherits nu, gamma, g, growth constants
    const double inv_n = 1.0 / static_cast<double>(scheme.n());
    const std::vector<double> nodes = scheme.nodes();
    const std::vector<double> weights = scheme.weights();

    out.drift = [b = base.drift, nodes, weights, inv_n](double t, std::span<const double> x,
                                                        std::span<double> o) {
        double acc = 0.0, y = 0.0, val = 0.0;
        for (std::size_t q = 0; q < nodes.size(); ++q) {
            y = x[0] - nodes[q] * inv_n;
            b(t, std::span<const double>(&y, 1), std::span<double>(&val, 1));
            acc += weights[q] * val;
        }
        o[0] = acc;
    };
    out.diffusion = [sig = base.diffusion, nodes, weights, inv_n](double t, std::span<const double> x,
                                                                  std::span<double> o) {
        double acc = 0.0, y = 0.0, val = 0.0;
        for (std::size_t q = 0; q < nodes.size(); ++q) {
            y = x[0] - nodes[q] * inv_n;
            sig(t, std::span<const double>(&y, 1), std::span<double>(&val, 1));
            acc += weights[q] * 0.5 * val * val; // mollify a = sigma^2/2
        }
        if (acc < -1e-12)
            throw std::runtime_error("mollify_coefficients: mollified a is negative");
        if (acc < 0.0) acc = 0.0;
        o[0] = std::sqrt(2.0 * acc);
    };
    return out;
}

double gamma_seq(double gamma, int n) {
    if (n < 1) throw std::invalid_argument("gamma_seq: n >= 1 required");
    return static_cast<double>(n) * gamma / (static_cast<double>(n) + 1.0);
}

} // namespace jumpflow

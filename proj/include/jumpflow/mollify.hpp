#pragma once

#include <vector>

#include "jumpflow/coefficients.hpp"

namespace jumpflow {

// Gauss-Legendre nodes and weights on [-1,1] (Newton iteration on the
// Legendre recurrence).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Quadrature rendering of the mollifier
//   phi(x) = c exp(-1/(1-x^2)) on (-1,1),
// normalized so the scheme's own quadrature integrates phi to exactly 1.
// Smoothing scale is 1/n: phi_n(z) = n phi(n z).
class MollifierScheme {
public:
    static MollifierScheme make(int n, int n_nodes = 32);

    int n() const noexcept { return n_; }
    int n_nodes() const noexcept { return static_cast<int>(nodes_.size()); }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    // Combined weights w_q * phi(v_q); sum is 1 by construction.
    const std::vector<double>& weights() const noexcept { return weights_; }
    double weight_sum() const noexcept;
    double normalization() const noexcept { return normalization_; }

    // Convolution against a scalar function: sum_q W_q f(x - v_q/n).
    double convolve(const std::function<double(double)>& f, double x) const;

private:
    int n_ = 1;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    double normalization_ = 1.0;
};

// Mollified coefficient set (1-D):
//   b^n(t,x) = Integral phi_n(z) b(t,x-z) dz rendered by the scheme,
//   a^n likewise for a = sigma^2/2, and sigma^n = sqrt(2 a^n).
// Growth constants and the jump data are inherited from the base set.
// Throws if a^n evaluates below -1e-12 (impossible for a >= 0 beyond
// quadrature noise).
CoefficientSet mollify_coefficients(const CoefficientSet& base, const MollifierScheme& scheme);

// gamma^n = n gamma / (n+1).
double gamma_seq(double gamma, int n);

} // namespace jumpflow

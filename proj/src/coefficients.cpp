#include "jumpflow/coefficients.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace jumpflow {

CoefficientSet make_coefficients_1d(Scalar2Fn b, Scalar2Fn sigma, double gamma,
                                    MarkMeasure nu, double c1, double c2,
                                    Scalar3Fn g) {
    CoefficientSet cs;
    cs.dim = 1;
    cs.noise_dim = 1;
    if (b) {
        cs.drift = [fn = std::move(b)](double t, std::span<const double> x, std::span<double> out) {
            out[0] = fn(t, x[0]);
        };
    } else {
        cs.drift = [](double, std::span<const double>, std::span<double> out) { out[0] = 0.0; };
    }
    if (sigma) {
        cs.diffusion = [fn = std::move(sigma)](double t, std::span<const double> x, std::span<double> out) {
            out[0] = fn(t, x[0]);
        };
    } else {
        cs.diffusion = [](double, std::span<const double>, std::span<double> out) { out[0] = 0.0; };
    }
    cs.jump_scale = gamma;
    if (g) {
        cs.jump_amplitude = [fn = std::move(g)](double t, std::span<const double> x,
                                                std::span<const double> u, std::span<double> out) {
            out[0] = fn(t, x[0], u[0]);
        };
    } else {
        // additive jumps: g(t,x,u) = u
        cs.jump_amplitude = [](double, std::span<const double>, std::span<const double> u,
                               std::span<double> out) { out[0] = u[0]; };
    }
    cs.nu = std::move(nu);
    cs.c1 = c1;
    cs.c2 = c2;
    return cs;
}

double drift_1d(const CoefficientSet& cs, double t, double x) {
    double out = 0.0;
    cs.drift(t, std::span<const double>(&x, 1), std::span<double>(&out, 1));
    return out;
}

double sigma_1d(const CoefficientSet& cs, double t, double x) {
    double out = 0.0;
    cs.diffusion(t, std::span<const double>(&x, 1), std::span<double>(&out, 1));
    return out;
}

double jump_amp_1d(const CoefficientSet& cs, double t, double x, double u) {
    double out = 0.0;
    cs.jump_amplitude(t, std::span<const double>(&x, 1), std::span<const double>(&u, 1),
                      std::span<double>(&out, 1));
    return out;
}

double a_1d(const CoefficientSet& cs, double t, double x) {
    const double s = sigma_1d(cs, t, x);
    return 0.5 * s * s;
}

namespace {

double euclidean_norm(std::span<const double> v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

// 0/0 -> 0, x/0 -> inf for x > 0.
double safe_ratio(double num, double den) {
    if (num == 0.0) return 0.0;
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return num / den;
}

} // namespace

ValidationReport validate_coefficients(const CoefficientSet& cs, int n_probe,
                                       std::uint64_t seed, double t_max, double x_radius) {
    if (n_probe < 1) throw std::invalid_argument("validate_coefficients: n_probe >= 1 required");
    const int d = cs.dim;
    const int m = cs.noise_dim;
    CounterRng rng = CounterRng::substream(seed, 0xC0EFULL);

    ValidationReport rep;
    rep.n_probe = n_probe;
    std::vector<double> x(d), b(d), sig(static_cast<std::size_t>(d) * m), g(d);
    for (int probe = 0; probe < n_probe; ++probe) {
        const double t = t_max * rng.next_uniform();
        for (int i = 0; i < d; ++i) x[i] = x_radius * (2.0 * rng.next_uniform() - 1.0);
        const double xnorm = euclidean_norm(x);

        cs.drift(t, x, b);
        cs.diffusion(t, x, sig);
        const double lhs = euclidean_norm(b) + euclidean_norm(sig); // Frobenius norm
        const double ratio = safe_ratio(lhs, cs.c1 * (1.0 + xnorm));
        if (ratio > rep.max_drift_diffusion_ratio) {
            rep.max_drift_diffusion_ratio = ratio;
            rep.witness_t = t;
            rep.witness_x = x;
        }

        double jump_sq = 0.0;
        for (std::size_t k = 0; k < cs.nu.size(); ++k) {
            const auto& atom = cs.nu.atom(k);
            cs.jump_amplitude(t, x, atom.mark, g);
            const double gn = euclidean_norm(g);
            jump_sq += atom.weight * gn * gn;
        }
        const double jratio = safe_ratio(jump_sq, cs.c2 * (1.0 + xnorm) * (1.0 + xnorm));
        if (jratio > rep.max_jump_ratio) {
            rep.max_jump_ratio = jratio;
            rep.jump_witness_t = t;
            rep.jump_witness_x = x;
        }
    }
    rep.violation = rep.max_drift_diffusion_ratio > 1.0 + 1e-12 ||
                    rep.max_jump_ratio > 1.0 + 1e-12;
    return rep;
}

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    os << "growth check over " << n_probe << " probes: "
       << "(|b|+||sigma||)/(C1(1+|x|)) max " << max_drift_diffusion_ratio;
    if (!witness_x.empty()) os << " at t=" << witness_t << " x=" << witness_x.front();
    os << "; jump ratio max " << max_jump_ratio;
    os << (violation ? "; VIOLATION" : "; ok");
    return os.str();
}

} // namespace jumpflow

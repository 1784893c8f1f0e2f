#include "jumpflow/moment_bound.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace jumpflow {

namespace {
constexpr double kKappaBdg = 6.0;
}

double lambda_eval(double r) {
    if (r < 0.0) throw std::invalid_argument("lambda_eval: r must be >= 0");
    if (r <= 1.0) return r;
    if (r >= 2.0) return lambda_plateau();
    // integral of lambda' = (1 + cos(pi (r-1))) / 2 from 1 to r
    const double u = r - 1.0;
    return 1.0 + 0.5 * u + std::sin(std::numbers::pi * u) / (2.0 * std::numbers::pi);
}

double lambda_deriv(double r) {
    if (r < 0.0) throw std::invalid_argument("lambda_deriv: r must be >= 0");
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    return 0.5 * (1.0 + std::cos(std::numbers::pi * (r - 1.0)));
}

double lambda_n_eval(int n, std::span<const double> x) {
    if (n < 1) throw std::invalid_argument("lambda_n_eval: n >= 1 required");
    double sq = 1.0;
    for (double c : x) sq += c * c;
    const double rho = std::sqrt(sq);
    return static_cast<double>(n) * lambda_eval(rho / static_cast<double>(n));
}

double lambda_n_eval(int n, double x) { return lambda_n_eval(n, std::span<const double>(&x, 1)); }

BoundReport moment_bound_check(const PathEnsemble& ens, double mu0_first_moment, double c1,
                               double c2, double nu_mass) {
    if (ens.paths.empty()) throw std::invalid_argument("moment_bound_check: empty ensemble");
    if (c1 < 0.0 || c2 < 0.0 || nu_mass < 0.0)
        throw std::invalid_argument("moment_bound_check: constants must be >= 0");
    if (ens.aborted_count() != 0)
        throw std::runtime_error("moment_bound_check: ensemble contains aborted paths");

    BoundReport rep;
    rep.kappa_bdg = kKappaBdg;
    const double jump_term = std::sqrt(c2 * nu_mass);
    rep.c_bundled = kKappaBdg * std::max({c1, jump_term, c1 + jump_term});

    if (rep.c_bundled > 0.0) {
        // C (y^2 + y) = 1/2 with y = sqrt(t0)
        const double y = 0.5 * (std::sqrt(1.0 + 2.0 / rep.c_bundled) - 1.0);
        rep.t0 = y * y;
        rep.doubling_exponent = static_cast<int>(std::floor(ens.horizon / rep.t0)) + 1;
    } else {
        rep.t0 = std::numeric_limits<double>::infinity();
        rep.doubling_exponent = 1;
    }

    if (rep.doubling_exponent > 1020) {
        rep.bound = std::numeric_limits<double>::infinity();
    } else {
        const double factor = std::ldexp(1.0, rep.doubling_exponent); // 2^k
        rep.bound = factor * mu0_first_moment + factor - 1.0;
    }

    double acc = 0.0;
    for (const auto& p : ens.paths) acc += p.sup_norm();
    rep.empirical_sup_moment = acc / static_cast<double>(ens.paths.size());

    rep.slack = rep.empirical_sup_moment > 0.0
                    ? rep.bound / rep.empirical_sup_moment
                    : std::numeric_limits<double>::infinity();
    rep.pass = rep.empirical_sup_moment <= rep.bound;
    return rep;
}

std::string BoundReport::to_string() const {
    std::ostringstream os;
    os << "E sup|X| = " << empirical_sup_moment << " vs bound " << bound << " (C=" << c_bundled
       << ", t0=" << t0 << ", 2^" << doubling_exponent << ", slack " << slack << ") -> "
       << (pass ? "pass" : "FAIL");
    return os.str();
}

} // namespace jumpflow

#include "jumpflow/catalog.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace jumpflow {

namespace {

// E|X| for X ~ N(mean, std^2).
double gaussian_abs_moment(double mean, double stddev) {
    if (stddev == 0.0) return std::fabs(mean);
    const double z = mean / stddev;
    return stddev * std::sqrt(2.0 / std::numbers::pi) * std::exp(-0.5 * z * z) +
           mean * std::erf(z / std::sqrt(2.0));
}

class Params {
public:
    Params(const std::vector<ParamSpec>& specs, const std::map<std::string, double>& user)
        : specs_(specs) {
        for (const auto& [key, value] : user) {
            if (!std::isfinite(value))
                throw std::invalid_argument("problem parameter '" + key + "' is not finite");
            bool known = false;
            for (const auto& s : specs)
                if (s.key == key) { known = true; break; }
            if (!known) throw std::invalid_argument("unknown problem parameter '" + key + "'");
            values_[key] = value;
        }
        for (const auto& s : specs)
            if (!values_.count(s.key)) values_[s.key] = s.default_value;
    }
    double operator()(const std::string& key) const { return values_.at(key); }

private:
    const std::vector<ParamSpec>& specs_;
    std::map<std::string, double> values_;
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

std::string growth_note(double c1, double c2) {
    std::ostringstream os;
    os << "linear growth |b|+||sigma|| <= " << c1 << " (1+|x|); jump growth sum w|g|^2 <= " << c2
       << " (1+|x|)^2";
    return os.str();
}

Problem finish(Problem p) {
    const ValidationReport rep = validate_coefficients(p.coeffs, 200, 0xCA7A106ULL);
    if (rep.violation)
        throw std::logic_error("catalog entry '" + p.name +
                               "' failed its growth check: " + rep.to_string());
    return p;
}

} // namespace

const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> entries = {
        {"zero",
         "frozen state: b = sigma = 0, no jumps",
         {{"x0", 0.0, "initial point"}}},
        {"brownian",
         "driftless diffusion: b = 0, sigma constant",
         {{"sigma", 1.0, "diffusion coefficient"}, {"x0", 0.0, "initial point"}}},
        {"cpoisson",
         "compound Poisson: b = sigma = 0, unit jumps of size h at rate lambda",
         {{"lambda", 3.0, "jump rate nu(U)"},
          {"jump_size", 0.7, "mark h (jump size is gamma*h)"},
          {"gamma", 1.0, "jump scale"},
          {"x0", 0.0, "initial point"}}},
        {"ou_jump",
         "mean-reverting diffusion with additive jumps: b = -theta x",
         {{"theta", 1.0, "reversion rate"},
          {"sigma", 1.0, "diffusion coefficient"},
          {"gamma", 1.0, "jump scale"},
          {"lambda", 1.0, "jump rate"},
          {"jump_size", 0.5, "mark h"},
          {"mu0_mean", 0.0, "initial Gaussian mean"},
          {"mu0_std", 1.0, "initial Gaussian std"}}},
        {"rough_drift",
         "kinked bounded drift b = min(|x|,2) - 1 with diffusion and additive jumps",
         {{"sigma", 1.0, "diffusion coefficient"},
          {"gamma", 1.0, "jump scale"},
          {"lambda", 1.0, "jump rate"},
          {"jump_size", 0.5, "mark h"},
          {"mu0_mean", 0.0, "initial Gaussian mean"},
          {"mu0_std", 1.0, "initial Gaussian std"}}},
        {"cor39_ode",
         "linear drift with vanishing noise: base for sigma^n = 1/n, gamma^n = gamma/n "
         "sequences whose limit is the ODE x' = -theta x",
         {{"theta", 1.0, "reversion rate"},
          {"sigma", 1.0, "base diffusion (scaled away by the sequence)"},
          {"gamma", 1.0, "base jump scale (scaled away by the sequence)"},
          {"lambda", 1.0, "jump rate"},
          {"jump_size", 0.5, "mark h"},
          {"x0", 1.0, "deterministic initial point"}}},
        {"thm41_additive",
         "additive-jump diffusion in compensated form: drift includes -gamma*mean(nu), i.e. "
         "dX = b0 dt + sigma dB + gamma u dN~ with b0 = -theta x + drift_const",
         {{"theta", 1.0, "reversion rate"},
          {"drift_const", 0.0, "constant drift offset"},
          {"sigma", 0.7, "diffusion coefficient"},
          {"gamma", 1.0, "jump scale"},
          {"lambda", 2.0, "jump rate"},
          {"jump_size", 0.4, "mark h"},
          {"mu0_mean", 0.0, "initial Gaussian mean"},
          {"mu0_std", 1.0, "initial Gaussian std"}}},
        {"tight_growth",
         "deterministic exponential growth b = growth * x from a large start; at short "
         "horizons the sup-moment bound has slack < 2, so it doubles into a failure",
         {{"growth", 1.0, "drift slope (equals C1)"}, {"x0", 1000.0, "initial point"}}},
    };
    return entries;
}

bool catalog_has(const std::string& name) {
    for (const auto& e : catalog_entries())
        if (e.name == name) return true;
    return false;
}

Problem make_problem(const std::string& name, const std::map<std::string, double>& params) {
    const CatalogEntry* entry = nullptr;
    for (const auto& e : catalog_entries())
        if (e.name == name) { entry = &e; break; }
    if (!entry) throw std::invalid_argument("unknown problem '" + name + "'");
    const Params p(entry->params, params);

    Problem prob;
    prob.name = name;

    auto gaussian_mu0 = [&](double mean, double stddev) {
        require(stddev > 0.0, name + ": mu0_std must be > 0");
        prob.mu0_sampler = gaussian_sampler_1d(mean, stddev);
        prob.mu0_density = [mean, stddev](const Grid1D& g) {
            return GridDensity1D::gaussian(g, mean, stddev);
        };
        prob.mu0_first_moment = gaussian_abs_moment(mean, stddev);
    };
    auto dirac_mu0 = [&](double x0) {
        prob.mu0_sampler = dirac_sampler({x0});
        prob.mu0_density = [x0](const Grid1D& g) { return GridDensity1D::delta_at(g, x0); };
        prob.mu0_first_moment = std::fabs(x0);
    };

    if (name == "zero") {
        prob.coeffs = make_coefficients_1d({}, {}, 0.0, MarkMeasure(), 0.0, 0.0);
        dirac_mu0(p("x0"));
        prob.additive_jumps = true;
        prob.assumptions = {growth_note(0.0, 0.0), "state constant in time"};
    } else if (name == "brownian") {
        const double sigma = p("sigma");
        require(sigma >= 0.0, "brownian: sigma must be >= 0");
        prob.coeffs = make_coefficients_1d({}, [sigma](double, double) { return sigma; }, 0.0,
                                           MarkMeasure(), sigma, 0.0);
        dirac_mu0(p("x0"));
        prob.additive_jumps = true;
        prob.assumptions = {growth_note(sigma, 0.0), "constant coefficients"};
    } else if (name == "cpoisson") {
        const double lambda = p("lambda"), h = p("jump_size"), gamma = p("gamma");
        require(lambda >= 0.0, "cpoisson: lambda must be >= 0");
        prob.coeffs = make_coefficients_1d({}, {}, gamma, MarkMeasure::scaled_dirac(lambda, h),
                                           0.0, lambda * h * h);
        dirac_mu0(p("x0"));
        prob.additive_jumps = true;
        prob.assumptions = {growth_note(0.0, lambda * h * h),
                            "pure jump; marginal at T is gamma*h times a Poisson(lambda*T) count"};
    } else if (name == "ou_jump" || name == "cor39_ode") {
        const double theta = p("theta"), sigma = p("sigma"), gamma = p("gamma");
        const double lambda = p("lambda"), h = p("jump_size");
        require(theta >= 0.0 && sigma >= 0.0 && lambda >= 0.0,
                name + ": theta, sigma, lambda must be >= 0");
        prob.coeffs = make_coefficients_1d([theta](double, double x) { return -theta * x; },
                                           [sigma](double, double) { return sigma; }, gamma,
                                           MarkMeasure::scaled_dirac(lambda, h),
                                           std::max(theta, sigma), lambda * h * h);
        if (name == "ou_jump")
            gaussian_mu0(p("mu0_mean"), p("mu0_std"));
        else
            dirac_mu0(p("x0"));
        prob.additive_jumps = true;
        prob.assumptions = {growth_note(std::max(theta, sigma), lambda * h * h),
                            "linear drift, constant diffusion: smooth, Lipschitz",
                            "first moment of the marginal solves m' = -theta m + gamma lambda h"};
    } else if (name == "rough_drift") {
        const double sigma = p("sigma"), gamma = p("gamma");
        const double lambda = p("lambda"), h = p("jump_size");
        require(sigma >= 0.0 && lambda >= 0.0, "rough_drift: sigma, lambda must be >= 0");
        prob.coeffs = make_coefficients_1d(
            [](double, double x) { return std::min(std::fabs(x), 2.0) - 1.0; },
            [sigma](double, double) { return sigma; }, gamma,
            MarkMeasure::scaled_dirac(lambda, h), 1.0 + sigma, lambda * h * h);
        gaussian_mu0(p("mu0_mean"), p("mu0_std"));
        prob.additive_jumps = true;
        prob.assumptions = {growth_note(1.0 + sigma, lambda * h * h),
                            "drift bounded by 1, Lipschitz, kinks at 0 and +-2",
                            "drift continuous in x, so mollified coefficients converge in L1_loc"};
    } else if (name == "thm41_additive") {
        const double theta = p("theta"), c0 = p("drift_const"), sigma = p("sigma");
        const double gamma = p("gamma"), lambda = p("lambda"), h = p("jump_size");
        require(theta >= 0.0 && sigma >= 0.0 && lambda >= 0.0,
                "thm41_additive: theta, sigma, lambda must be >= 0");
        const double compensation = gamma * lambda * h; // gamma * Integral u nu(du)
        const double k = c0 - compensation;
        prob.coeffs = make_coefficients_1d(
            [theta, k](double, double x) { return -theta * x + k; },
            [sigma](double, double) { return sigma; }, gamma,
            MarkMeasure::scaled_dirac(lambda, h), std::max(theta, std::fabs(k) + sigma),
            lambda * h * h);
        gaussian_mu0(p("mu0_mean"), p("mu0_std"));
        prob.additive_jumps = true;
        prob.assumptions = {growth_note(std::max(theta, std::fabs(k) + sigma), lambda * h * h),
                            "compensated jumps: the raw drift carries -gamma*lambda*h so the "
                            "jump integral is centered"};
    } else if (name == "tight_growth") {
        const double growth = p("growth");
        require(growth > 0.0, "tight_growth: growth must be > 0");
        prob.coeffs = make_coefficients_1d([growth](double, double x) { return growth * x; }, {},
                                           0.0, MarkMeasure(), growth, 0.0);
        dirac_mu0(p("x0"));
        prob.additive_jumps = true;
        prob.assumptions = {growth_note(growth, 0.0),
                            "deterministic; designed for horizons T <= t0 so the sup-moment "
                            "bound equals 2*x0 + 1"};
    } else {
        throw std::invalid_argument("unknown problem '" + name + "'");
    }
    return finish(std::move(prob));
}

std::string catalog_listing() {
    std::ostringstream os;
    for (const auto& e : catalog_entries()) {
        os << e.name << "\n  " << e.summary << "\n  parameters:\n";
        for (const auto& ps : e.params)
            os << "    " << ps.key << " = " << ps.default_value << "  (" << ps.description << ")\n";
        const Problem prob = make_problem(e.name, {});
        os << "  assumptions:\n";
        for (const auto& a : prob.assumptions) os << "    - " << a << "\n";
    }
    return os.str();
}

} // namespace jumpflow

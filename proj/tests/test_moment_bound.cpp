#include <doctest.h>

#include <cmath>

#include "jumpflow/moment_bound.hpp"
#include "jumpflow/simulate.hpp"

using namespace jumpflow;

TEST_CASE("truncation profile lambda") {
    CHECK(lambda_eval(0.0) == 0.0);
    CHECK(lambda_eval(0.7) == 0.7);
    CHECK(lambda_eval(1.0) == 1.0);
    CHECK(lambda_eval(2.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(lambda_eval(100.0) == 1.5);
    // C^1: derivative continuous at the knots
    CHECK(lambda_deriv(1.0) == doctest::Approx(1.0));
    CHECK(lambda_deriv(2.0) == doctest::Approx(0.0));
    // concavity: derivative non-increasing
    double prev = 2.0;
    for (double r = 0.0; r <= 2.5; r += 0.01) {
        CHECK(lambda_deriv(r) <= prev + 1e-15);
        prev = lambda_deriv(r);
    }
    // consistency of the closed form with the derivative (midpoint rule)
    double acc = lambda_eval(1.0);
    for (double r = 1.0; r < 2.0 - 1e-9; r += 1e-4) acc += lambda_deriv(r + 5e-5) * 1e-4;
    CHECK(acc == doctest::Approx(lambda_eval(2.0)).epsilon(1e-8));
}

TEST_CASE("lambda_n at the origin equals 1 for every n") {
    // rho(0) = 1 and lambda(r) = r for r <= 1, so n lambda(1/n) = 1
    for (int n : {1, 2, 3, 10, 1000}) CHECK(lambda_n_eval(n, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("lambda_n plateau and identity regions") {
    // rho(x)/n >= 2 -> plateau 1.5 n
    CHECK(lambda_n_eval(1, std::sqrt(4.0 - 1.0)) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(lambda_n_eval(2, 10.0) == doctest::Approx(3.0).epsilon(1e-12));
    // rho(x) <= n -> lambda_n = rho exactly
    for (int n : {2, 5, 17}) {
        const double x = std::sqrt(static_cast<double>(n) * n - 1.0) * 0.999;
        const double rho = std::sqrt(1.0 + x * x);
        CHECK(lambda_n_eval(n, x) == doctest::Approx(rho).epsilon(1e-14));
    }
}

TEST_CASE("lambda_n: monotone in |x|, linear bound, pointwise limit") {
    for (int n : {1, 3, 8}) {
        double prev = 0.0;
        for (double x = 0.0; x < 30.0; x += 0.25) {
            const double val = lambda_n_eval(n, x);
            CHECK(val >= prev - 1e-14);       // monotone in |x|
            CHECK(val <= 1.0 * (1.0 + x) + 1e-12); // lambda_n <= C (1+|x|), C = 1
            prev = val;
        }
    }
    // pointwise convergence to rho(x) as n grows
    const double x = 7.3;
    const double rho = std::sqrt(1.0 + x * x);
    double err_prev = std::fabs(lambda_n_eval(1, x) - rho);
    for (int n : {2, 4, 8, 16, 64}) {
        const double err = std::fabs(lambda_n_eval(n, x) - rho);
        CHECK(err <= err_prev + 1e-14);
        err_prev = err;
    }
    CHECK(err_prev < 1e-12);
}

namespace {

PathEnsemble frozen_ensemble(double x0, std::size_t n_paths) {
    const CoefficientSet cs = make_coefficients_1d({}, {}, 0.0, MarkMeasure(), 0.0, 0.0);
    EnsembleOptions opt;
    opt.horizon = 1.0;
    opt.n_steps = 4;
    opt.n_paths = n_paths;
    opt.master_seed = 3;
    return simulate_ensemble(cs, dirac_sampler({x0}), opt);
}

} // namespace

TEST_CASE("zero coefficients: bound is 2|c|+1 and passes") {
    const double c = -3.0;
    const PathEnsemble ens = frozen_ensemble(c, 50);
    const BoundReport rep = moment_bound_check(ens, std::fabs(c), 0.0, 0.0, 0.0);
    CHECK(rep.doubling_exponent == 1);
    CHECK(rep.bound == doctest::Approx(2.0 * std::fabs(c) + 1.0));
    CHECK(rep.empirical_sup_moment == doctest::Approx(std::fabs(c)));
    CHECK(rep.pass);
    CHECK(rep.slack > 2.0);
}

TEST_CASE("mean-reverting jump diffusion passes with slack >= 2") {
    const double lambda = 1.0, h = 0.5;
    const CoefficientSet cs = make_coefficients_1d(
        [](double, double x) { return -x; }, [](double, double) { return 1.0; }, 1.0,
        MarkMeasure::scaled_dirac(lambda, h), 1.0, lambda * h * h);
    EnsembleOptions opt;
    opt.horizon = 1.0;
    opt.n_steps = 64;
    opt.n_paths = 5000;
    opt.master_seed = 8;
    opt.n_threads = 2;
    const PathEnsemble ens = simulate_ensemble(cs, gaussian_sampler_1d(0.0, 1.0), opt);
    const double mu0_abs = std::sqrt(2.0 / M_PI);
    const BoundReport rep = moment_bound_check(ens, mu0_abs, 1.0, lambda * h * h, lambda);
    CHECK(rep.pass);
    CHECK(rep.slack >= 2.0);
}

TEST_CASE("calibrated tight fixture: doubling the empirical flips the verdict") {
    // deterministic growth b = x from x0 = 1000 over T = 0.005 <= t0:
    // bound = 2 x0 + 1, empirical ~ x0 e^T, slack just under 2
    const CoefficientSet cs = make_coefficients_1d([](double, double x) { return x; }, {}, 0.0,
                                                   MarkMeasure(), 1.0, 0.0);
    EnsembleOptions opt;
    opt.horizon = 0.005;
    opt.n_steps = 16;
    opt.n_paths = 50;
    opt.master_seed = 1;
    const PathEnsemble ens = simulate_ensemble(cs, dirac_sampler({1000.0}), opt);
    const BoundReport rep = moment_bound_check(ens, 1000.0, 1.0, 0.0, 0.0);
    CHECK(rep.doubling_exponent == 1);
    CHECK(rep.bound == doctest::Approx(2001.0));
    CHECK(rep.pass);
    CHECK(rep.slack < 2.0);
    CHECK(rep.slack >= 1.5);

    // adversarial post-processing: double every path value
    PathEnsemble doubled = ens;
    for (auto& p : doubled.paths) {
        for (auto& v : p.values) v *= 2.0;
        for (auto& v : p.pre_jump_values) v *= 2.0;
    }
    const BoundReport rep2 = moment_bound_check(doubled, 1000.0, 1.0, 0.0, 0.0);
    CHECK_FALSE(rep2.pass);
}

TEST_CASE("t0 solves the bundled equation in closed form") {
    const PathEnsemble ens = frozen_ensemble(0.0, 10);
    const BoundReport rep = moment_bound_check(ens, 0.0, 1.0, 0.25, 1.0);
    // C = 6 max(1, 0.5, 1.5) = 9 and C (t0 + sqrt(t0)) = 1/2
    CHECK(rep.c_bundled == doctest::Approx(9.0));
    CHECK(rep.c_bundled * (rep.t0 + std::sqrt(rep.t0)) == doctest::Approx(0.5).epsilon(1e-12));
}

#include <doctest.h>

#include <cmath>

#include "jumpflow/simulate.hpp"

using namespace jumpflow;

namespace {

CoefficientSet zero_coeffs() { return make_coefficients_1d({}, {}, 0.0, MarkMeasure(), 0.0, 0.0); }

} // namespace

TEST_CASE("no dynamics: path is frozen at x0") {
    const CoefficientSet cs = zero_coeffs();
    const double x0 = 1.25;
    const PathSample p = simulate_path(cs, {&x0, 1}, 2.0, 16, CounterRng::substream(1, 0));
    REQUIRE_FALSE(p.aborted);
    REQUIRE(p.n_times() == 17);
    for (std::size_t i = 0; i < p.n_times(); ++i) CHECK(p.value_at(i)[0] == x0);
    CHECK(p.jump_index.empty());
}

TEST_CASE("constant drift is integrated exactly") {
    const CoefficientSet cs =
        make_coefficients_1d([](double, double) { return 1.0; }, {}, 0.0, MarkMeasure(), 1.0, 0.0);
    const double x0 = 0.0;
    const PathSample p = simulate_path(cs, {&x0, 1}, 1.0, 7, CounterRng::substream(2, 0));
    CHECK(p.value_at(p.n_times() - 1)[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("jump bookkeeping: value = pre_jump + gamma * g") {
    const double gamma = 0.5;
    const CoefficientSet cs = make_coefficients_1d(
        [](double, double x) { return -x; }, [](double, double) { return 0.3; }, gamma,
        MarkMeasure::scaled_dirac(4.0, 1.5), 1.0, 4.0 * 1.5 * 1.5);
    const double x0 = 0.2;
    const PathSample p = simulate_path(cs, {&x0, 1}, 2.0, 32, CounterRng::substream(9, 4));
    REQUIRE_FALSE(p.aborted);
    REQUIRE(p.jump_index.size() > 2);
    for (std::size_t j = 0; j < p.jump_index.size(); ++j) {
        const double pre = p.pre_jump_value(j)[0];
        const double post = p.value_at(p.jump_index[j])[0];
        CHECK(post == doctest::Approx(pre + gamma * 1.5).epsilon(1e-14));
    }
}

TEST_CASE("gamma = 0 applies no discontinuity even when jumps fire") {
    const CoefficientSet cs = make_coefficients_1d([](double, double x) { return -x; },
                                                   [](double, double) { return 1.0; }, 0.0,
                                                   MarkMeasure::scaled_dirac(5.0, 1.0), 1.0, 5.0);
    const double x0 = 0.0;
    const PathSample p = simulate_path(cs, {&x0, 1}, 1.0, 16, CounterRng::substream(3, 1));
    REQUIRE(p.jump_index.size() > 0);
    for (std::size_t j = 0; j < p.jump_index.size(); ++j)
        CHECK(p.pre_jump_value(j)[0] == p.value_at(p.jump_index[j])[0]);
}

TEST_CASE("compound Poisson terminal value counts jumps") {
    // b = sigma = 0, gamma = 1, g = u, nu = 3 delta_1: X_T - x0 = K ~ Poisson(3)
    const CoefficientSet cs =
        make_coefficients_1d({}, {}, 1.0, MarkMeasure::scaled_dirac(3.0, 1.0), 0.0, 3.0);
    EnsembleOptions opt;
    opt.horizon = 1.0;
    opt.n_steps = 4;
    opt.n_paths = 40000;
    opt.master_seed = 20260810;
    const PathEnsemble ens = simulate_ensemble(cs, dirac_sampler({0.0}), opt);
    CHECK(ens.aborted_count() == 0);

    double mean = 0.0, var = 0.0, count_mean = 0.0, count_var = 0.0;
    for (const auto& p : ens.paths) {
        const double xT = p.value_at(p.n_times() - 1)[0];
        mean += xT;
        count_mean += static_cast<double>(p.jump_index.size());
        CHECK(xT == doctest::Approx(static_cast<double>(p.jump_index.size())).epsilon(1e-12));
    }
    mean /= static_cast<double>(opt.n_paths);
    count_mean /= static_cast<double>(opt.n_paths);
    for (const auto& p : ens.paths) {
        const double xT = p.value_at(p.n_times() - 1)[0];
        var += (xT - mean) * (xT - mean);
        const double k = static_cast<double>(p.jump_index.size());
        count_var += (k - count_mean) * (k - count_mean);
    }
    var /= static_cast<double>(opt.n_paths);
    count_var /= static_cast<double>(opt.n_paths);

    const double se = std::sqrt(3.0 / static_cast<double>(opt.n_paths));
    CHECK(std::fabs(mean - 3.0) <= 3.0 * se);
    // Poisson equidispersion within 5 SE (spec invariant)
    const double se_var = std::sqrt((3.0 + 2.0 * 9.0) / static_cast<double>(opt.n_paths));
    CHECK(std::fabs(count_var - 3.0) <= 5.0 * se_var);
    CHECK(std::fabs(count_mean - 3.0) <= 5.0 * se);
}

TEST_CASE("mean-reverting jump diffusion matches the first-moment ODE") {
    // m' = -m + gamma lambda h, m(0) = 0  =>  m(1) = gamma lambda h (1 - e^{-1})
    const double gamma = 1.0, lambda = 1.0, h = 0.5;
    const CoefficientSet cs = make_coefficients_1d(
        [](double, double x) { return -x; }, [](double, double) { return 1.0; }, gamma,
        MarkMeasure::scaled_dirac(lambda, h), 1.0, lambda * h * h);
    EnsembleOptions opt;
    opt.horizon = 1.0;
    opt.n_steps = 512;
    opt.n_paths = 40000;
    opt.master_seed = 7;
    const PathEnsemble ens = simulate_ensemble(cs, gaussian_sampler_1d(0.0, 1.0), opt);
    CHECK(ens.aborted_count() == 0);
    const EmpiricalLaw law = marginal(ens, 1.0);
    const double target = gamma * lambda * h * (1.0 - std::exp(-1.0));
    const double se = std::sqrt(law.variance_1d() / static_cast<double>(law.size()));
    CHECK(std::fabs(law.mean_1d() - target) <= 3.0 * se + 2e-3 /*Euler bias*/);
}

TEST_CASE("cadlag marginal lookup picks the last grid value") {
    PathSample p;
    p.dim = 1;
    p.times = {0.0, 0.3, 0.5, 1.0};
    p.values = {1.0, 2.0, 3.0, 4.0};
    p.jump_index = {1};
    p.pre_jump_values = {1.5};
    CHECK(p.state_at(0.0)[0] == 1.0);
    CHECK(p.state_at(0.3)[0] == 2.0);  // right limit at the jump time
    CHECK(p.state_at(0.4)[0] == 2.0);  // between the jump and the next grid point
    CHECK(p.state_at(0.999)[0] == 3.0);
    CHECK(p.state_at(1.0)[0] == 4.0);
    CHECK_THROWS_AS(p.index_at(1.5), std::out_of_range);
}

TEST_CASE("ensembles are bit-identical across thread counts") {
    const CoefficientSet cs = make_coefficients_1d(
        [](double, double x) { return -x; }, [](double, double) { return 1.0; }, 1.0,
        MarkMeasure::scaled_dirac(2.0, 0.3), 1.0, 2.0 * 0.09);
    EnsembleOptions opt;
    opt.horizon = 1.0;
    opt.n_steps = 32;
    opt.n_paths = 500;
    opt.master_seed = 99;
    opt.n_threads = 1;
    const PathEnsemble a = simulate_ensemble(cs, gaussian_sampler_1d(0.0, 1.0), opt);
    opt.n_threads = 3;
    const PathEnsemble b = simulate_ensemble(cs, gaussian_sampler_1d(0.0, 1.0), opt);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a.paths[i].times == b.paths[i].times);
        REQUIRE(a.paths[i].values == b.paths[i].values);
        REQUIRE(a.paths[i].pre_jump_values == b.paths[i].pre_jump_values);
    }
}

TEST_CASE("single-path ensemble reduces to simulate_path") {
    const CoefficientSet cs = make_coefficients_1d([](double, double x) { return -x; },
                                                   [](double, double) { return 0.5; }, 0.0,
                                                   MarkMeasure(), 1.0, 0.0);
    EnsembleOptions opt;
    opt.horizon = 1.0;
    opt.n_steps = 16;
    opt.n_paths = 1;
    opt.master_seed = 31;
    const PathEnsemble ens = simulate_ensemble(cs, dirac_sampler({0.7}), opt);

    CounterRng rng = CounterRng::substream(31, 0);
    std::vector<double> x0(1);
    dirac_sampler({0.7})(rng, x0);
    const PathSample direct = simulate_path(cs, x0, 1.0, 16, rng);
    CHECK(ens.paths[0].values == direct.values);
}

TEST_CASE("overflow aborts the path and the ensemble reports it") {
    const CoefficientSet cs = make_coefficients_1d(
        [](double, double x) { return x * x * x; }, {}, 0.0, MarkMeasure(), 1.0, 0.0);
    const double x0 = 1e60;
    const PathSample p = simulate_path(cs, {&x0, 1}, 1.0, 8, CounterRng::substream(0, 0));
    CHECK(p.aborted);
    CHECK_FALSE(p.abort_reason.empty());

    EnsembleOptions opt;
    opt.horizon = 1.0;
    opt.n_steps = 8;
    opt.n_paths = 5;
    opt.master_seed = 1;
    const PathEnsemble ens = simulate_ensemble(cs, dirac_sampler({1e60}), opt);
    CHECK(ens.aborted_count() == 5);
    CHECK_THROWS_AS(marginal(ens, 1.0), std::runtime_error);
}

TEST_CASE("scan_marginals agrees with ensemble marginals") {
    const CoefficientSet cs = make_coefficients_1d(
        [](double, double x) { return -x; }, [](double, double) { return 1.0; }, 1.0,
        MarkMeasure::scaled_dirac(1.0, 0.5), 1.0, 0.25);
    EnsembleOptions opt;
    opt.horizon = 1.0;
    opt.n_steps = 16;
    opt.n_paths = 200;
    opt.master_seed = 55;
    const PathEnsemble ens = simulate_ensemble(cs, gaussian_sampler_1d(0.0, 1.0), opt);
    const std::vector<double> times = {0.25, 1.0};
    const std::vector<EmpiricalLaw> laws = scan_marginals(cs, gaussian_sampler_1d(0.0, 1.0), opt, times);
    CHECK(laws[0].samples == marginal(ens, 0.25).samples);
    CHECK(laws[1].samples == marginal(ens, 1.0).samples);
}

TEST_CASE("preconditions") {
    const CoefficientSet cs = zero_coeffs();
    const double x0 = 0.0;
    CHECK_THROWS_AS(simulate_path(cs, {&x0, 1}, 1.0, 0, CounterRng()), std::invalid_argument);
    CHECK_THROWS_AS(simulate_path(cs, {&x0, 1}, 0.0, 4, CounterRng()), std::invalid_argument);
}

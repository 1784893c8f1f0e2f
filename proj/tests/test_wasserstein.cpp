#include <doctest.h>

#include <cmath>

#include "jumpflow/rng.hpp"
#include "jumpflow/wasserstein.hpp"

using namespace jumpflow;

namespace {

EmpiricalLaw law_of(std::vector<double> xs) {
    EmpiricalLaw l;
    l.dim = 1;
    l.samples = std::move(xs);
    return l;
}

} // namespace

TEST_CASE("identical laws are at distance zero") {
    const EmpiricalLaw a = law_of({0.3, -1.0, 2.0, 0.0});
    CHECK(wasserstein1(a, a) == 0.0);
}

TEST_CASE("point masses: distance |c|") {
    const EmpiricalLaw a = law_of({0.0, 0.0, 0.0});
    const EmpiricalLaw b = law_of({-2.5, -2.5, -2.5});
    CHECK(wasserstein1(a, b) == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("translation oracle on uniform grids") {
    std::vector<double> xs, ys;
    const int n = 1000;
    for (int i = 0; i < n; ++i) {
        xs.push_back((i + 0.5) / n);
        ys.push_back((i + 0.5) / n + 0.3);
    }
    CHECK(wasserstein1(law_of(xs), law_of(ys)) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("unequal sizes agree with the quantile form on matched grids") {
    // U[0,1] rendered with 400 vs 200 points: distance O(grid spacing)
    std::vector<double> xs, ys;
    for (int i = 0; i < 400; ++i) xs.push_back((i + 0.5) / 400.0);
    for (int i = 0; i < 200; ++i) ys.push_back((i + 0.5) / 200.0);
    CHECK(wasserstein1(law_of(xs), law_of(ys)) < 2.0 / 200.0);
}

TEST_CASE("metric properties on random triples") {
    CounterRng rng = CounterRng::substream(17, 0);
    for (int rep = 0; rep < 20; ++rep) {
        auto draw = [&](std::size_t n) {
            std::vector<double> v(n);
            for (auto& x : v) x = 4.0 * (rng.next_uniform() - 0.5) + rng.next_normal();
            return law_of(std::move(v));
        };
        const EmpiricalLaw a = draw(60), b = draw(60), c = draw(45);
        const double ab = wasserstein1(a, b);
        const double ba = wasserstein1(b, a);
        CHECK(ab == ba); // symmetry, exactly
        const double ac = wasserstein1(a, c);
        const double cb = wasserstein1(c, b);
        CHECK(ab <= ac + cb + 1e-12); // triangle inequality
        CHECK(ab >= 0.0);
    }
}

TEST_CASE("law vs grid density: self-consistency at the sampling rate") {
    const Grid1D g{-5.0, 5.0, 500};
    const GridDensity1D v = GridDensity1D::gaussian(g, 0.5, 1.0);

    // draw from v itself by inverse CDF over the cells
    std::vector<double> cum(static_cast<std::size_t>(g.n_cells) + 1, 0.0);
    for (int i = 0; i < g.n_cells; ++i)
        cum[static_cast<std::size_t>(i) + 1] =
            cum[static_cast<std::size_t>(i)] + v.v[static_cast<std::size_t>(i)] * g.dx();
    CounterRng rng = CounterRng::substream(23, 1);
    const std::size_t n = 40000;
    std::vector<double> xs(n);
    for (auto& x : xs) {
        const double u = rng.next_uniform() * cum.back();
        const auto it = std::upper_bound(cum.begin(), cum.end(), u);
        const int i = std::max<int>(1, static_cast<int>(it - cum.begin())) - 1;
        const double frac =
            (u - cum[static_cast<std::size_t>(i)]) / std::max(cum[static_cast<std::size_t>(i) + 1] -
                                                                  cum[static_cast<std::size_t>(i)],
                                                              1e-300);
        x = g.edge(i) + frac * g.dx();
    }
    const double w1 = w1_against_density(law_of(std::move(xs)), v);

    // expected Var-type fluctuation: Int sqrt(F(1-F)/n) dx
    double expected = 0.0;
    for (int i = 0; i <= g.n_cells; ++i) {
        const double F = cum[static_cast<std::size_t>(i)] / cum.back();
        expected += std::sqrt(F * (1.0 - F) / static_cast<double>(n)) * g.dx();
    }
    CHECK(w1 <= 3.0 * expected);
    CHECK(w1 > 0.0);
}

TEST_CASE("empirical delta vs delta-like density") {
    const Grid1D g{-1.0, 1.0, 100};
    const GridDensity1D v = GridDensity1D::delta_at(g, 0.0);
    const EmpiricalLaw a = law_of({0.0, 0.0, 0.0, 0.0});
    CHECK(w1_against_density(a, v) <= g.dx());
}

TEST_CASE("excessive leak is rejected") {
    const Grid1D g{-1.0, 1.0, 100};
    GridDensity1D v = GridDensity1D::delta_at(g, 0.0);
    for (auto& c : v.v) c *= 0.9; // pretend 10% leaked
    v.leaked_mass = 0.1;
    CHECK_THROWS_AS(w1_against_density(law_of({0.0}), v), std::invalid_argument);
}

TEST_CASE("atomic oracle distance") {
    // empirical exactly on two atoms 0 and 1 with equal mass
    const EmpiricalLaw a = law_of({0.0, 1.0, 0.0, 1.0});
    const std::vector<double> pos = {0.0, 1.0};
    const std::vector<double> prob = {0.5, 0.5};
    CHECK(w1_against_atoms(a, pos, prob) == doctest::Approx(0.0).epsilon(1e-15));
    const EmpiricalLaw b = law_of({0.0, 0.0, 1.0, 1.0, 1.0, 1.0}); // 1/3 vs 2/3
    CHECK(w1_against_atoms(b, pos, prob) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("dimension mismatch is rejected") {
    EmpiricalLaw a = law_of({0.0, 1.0});
    EmpiricalLaw b;
    b.dim = 2;
    b.samples = {0.0, 1.0};
    CHECK_THROWS_AS(wasserstein1(a, b), std::invalid_argument);
}

#include <doctest.h>

#include <cmath>

#include "jumpflow/mollify.hpp"

using namespace jumpflow;

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
    std::vector<double> x, w;
    gauss_legendre(6, x, w);
    double m0 = 0.0, m2 = 0.0, m7 = 0.0;
    for (std::size_t q = 0; q < x.size(); ++q) {
        m0 += w[q];
        m2 += w[q] * x[q] * x[q];
        m7 += w[q] * std::pow(x[q], 7);
    }
    CHECK(m0 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(m2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(std::fabs(m7) < 1e-14); // odd moment
}

TEST_CASE("scheme weights are a probability vector") {
    for (int n : {1, 4, 32}) {
        const MollifierScheme s = MollifierScheme::make(n);
        CHECK(std::fabs(s.weight_sum() - 1.0) <= 1e-10);
        for (double w : s.weights()) CHECK(w >= 0.0);
        for (double v : s.nodes()) {
            CHECK(v > -1.0);
            CHECK(v < 1.0);
        }
    }
}

TEST_CASE("constant and linear drifts are exact fixed points") {
    const CoefficientSet base = make_coefficients_1d(
        [](double, double x) { return 2.5 - 3.0 * x; }, [](double, double) { return 1.0; }, 0.0,
        MarkMeasure(), 5.0, 0.0);
    for (int n : {1, 2, 8, 32}) {
        const CoefficientSet mol = mollify_coefficients(base, MollifierScheme::make(n));
        for (double x : {-2.0, -0.1, 0.0, 1.7}) {
            CHECK(std::fabs(drift_1d(mol, 0.3, x) - (2.5 - 3.0 * x)) <= 1e-10);
            CHECK(std::fabs(sigma_1d(mol, 0.3, x) - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("mollified |x| at the origin matches the closed-form kernel moment") {
    // Integral phi(v) |v| dv = c (e^{-1} - E1(1)) = 0.33445399770997533;
    // the 32-node rendering of the kinked integrand carries ~7e-4 error.
    const double kernel_abs_moment = 0.33445399770997533;
    const CoefficientSet base = make_coefficients_1d(
        [](double, double x) { return std::fabs(x); }, {}, 0.0, MarkMeasure(), 1.0, 0.0);
    for (int n : {1, 2, 5}) {
        const CoefficientSet mol = mollify_coefficients(base, MollifierScheme::make(n));
        const double got = drift_1d(mol, 0.0, 0.0) * static_cast<double>(n);
        CHECK(std::fabs(got - kernel_abs_moment) <= 2e-3);
    }
}

TEST_CASE("mollified diffusion: a^n stays nonnegative, sigma^n = sqrt(2 a^n)") {
    const CoefficientSet base = make_coefficients_1d(
        {}, [](double, double x) { return x; }, 0.0, MarkMeasure(), 1.0, 0.0); // a = x^2/2
    const MollifierScheme s = MollifierScheme::make(4);
    const CoefficientSet mol = mollify_coefficients(base, s);
    for (double x : {-1.0, 0.0, 0.5, 2.0}) {
        const double sn = sigma_1d(mol, 0.0, x);
        CHECK(sn >= 0.0);
        // a^n(x) = Int phi_n(z) (x-z)^2/2 dz = x^2/2 + m2/(2 n^2) with m2 the
        // kernel's second moment
        double m2 = 0.0;
        for (std::size_t q = 0; q < s.nodes().size(); ++q)
            m2 += s.weights()[q] * s.nodes()[q] * s.nodes()[q];
        const double expect = 0.5 * x * x + m2 / (2.0 * 16.0);
        CHECK(0.5 * sn * sn == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("gamma sequence") {
    CHECK(gamma_seq(0.0, 1) == 0.0);
    CHECK(gamma_seq(0.0, 12) == 0.0);
    CHECK(gamma_seq(2.0, 1) == doctest::Approx(1.0));
    CHECK(gamma_seq(1.0, 99) == doctest::Approx(0.99));
    double prev = 0.0;
    for (int n = 1; n <= 64; n *= 2) {
        const double g = gamma_seq(1.5, n);
        CHECK(std::fabs(g) <= 1.5);
        CHECK(g > prev); // strictly monotone toward gamma
        prev = g;
    }
    CHECK_THROWS_AS(gamma_seq(1.0, 0), std::invalid_argument);
}

TEST_CASE("mollify preconditions") {
    CoefficientSet base = make_coefficients_1d({}, {}, 0.0, MarkMeasure(), 0.0, 0.0);
    base.dim = 2;
    CHECK_THROWS_AS(mollify_coefficients(base, MollifierScheme::make(1)), std::invalid_argument);
    CHECK_THROWS_AS(MollifierScheme::make(0), std::invalid_argument);
}

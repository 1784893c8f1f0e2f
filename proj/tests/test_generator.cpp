#include <doctest.h>

#include <cmath>

#include "jumpflow/generator.hpp"

using namespace jumpflow;

namespace {

// Compactly supported C^2 window that equals x^2 on [-1/2, 1/2]; the
// cutoff only matters outside the inner window.
TestFunction quadratic_window() {
    TestFunction f;
    f.label = "x^2 window";
    f.center = 0.0;
    f.support_radius = 2.0;
    auto cut = [](double x) {
        const double y = x / 2.0;
        const double q = 1.0 - y * y;
        return q > 0.0 ? q * q * q : 0.0;
    };
    f.value = [cut](double x) { return std::fabs(x) <= 0.5 ? x * x : x * x * cut(x); };
    f.deriv1 = [](double x) { return std::fabs(x) <= 0.5 ? 2.0 * x : 0.0; };  // used near 0 only
    f.deriv2 = [](double x) { return std::fabs(x) <= 0.5 ? 2.0 : 0.0; };
    return f;
}

} // namespace

TEST_CASE("constant test function on its interior: generator vanishes") {
    TestFunction flat;
    flat.label = "flat";
    flat.center = 0.0;
    flat.support_radius = 10.0;
    flat.value = [](double) { return 1.0; };
    flat.deriv1 = [](double) { return 0.0; };
    flat.deriv2 = [](double) { return 0.0; };
    const CoefficientSet cs = make_coefficients_1d(
        [](double, double x) { return 3.0 * x; }, [](double, double) { return 2.0; }, 1.0,
        MarkMeasure::scaled_dirac(2.0, 0.1), 5.0, 0.02);
    // shifted points stay interior, so phi(x + shift) - phi(x) = 0
    CHECK(apply_generator(cs, 0.0, flat, 0.5) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("diffusion term: a phi'' with phi = x^2 gives 2a") {
    const CoefficientSet cs =
        make_coefficients_1d({}, [](double, double) { return 1.0; }, 0.0, MarkMeasure(), 1.0, 0.0);
    // a = sigma^2/2 = 1/2, phi'' = 2  =>  a phi'' = 1
    CHECK(apply_generator(cs, 0.0, quadratic_window(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("pure jump generator: phi(x+h) - phi(x)") {
    const double h = 0.8;
    const CoefficientSet cs =
        make_coefficients_1d({}, {}, 1.0, MarkMeasure::scaled_dirac(1.0, h), 0.0, h * h);
    const TestFunction phi = bump(0.0, 1.5);
    for (double x : {-1.0, -0.3, 0.0, 0.4}) {
        const double expected = phi.value(x + h) - phi.value(x);
        CHECK(apply_generator(cs, 0.0, phi, x) == doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("full generator assembles all three terms") {
    const double gamma = 0.7, lambda = 2.0, h = 0.4;
    const CoefficientSet cs = make_coefficients_1d(
        [](double t, double x) { return t - x; }, [](double, double x) { return 1.0 + 0.1 * x; },
        gamma, MarkMeasure::scaled_dirac(lambda, h), 2.0, lambda * h * h);
    const TestFunction phi = bump(0.2, 1.0);
    const double t = 0.5, x = -0.1;
    const double a = 0.5 * (1.0 + 0.1 * x) * (1.0 + 0.1 * x);
    const double expected = (t - x) * phi.deriv1(x) + a * phi.deriv2(x) +
                            lambda * (phi.value(x + gamma * h) - phi.value(x));
    CHECK(apply_generator(cs, t, phi, x) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("bump dictionary: smoothness and support") {
    const TestFunction phi = bump(1.0, 2.0);
    CHECK(phi.value(1.0) == doctest::Approx(1.0));
    CHECK(phi.value(3.0) == 0.0);
    CHECK(phi.value(-1.0) == 0.0);
    CHECK(phi.deriv1(3.0) == 0.0);
    CHECK(phi.deriv2(-1.0) == 0.0);
    // C^2 across the support edge: finite differences of phi' stay small
    const double eps = 1e-6;
    CHECK(std::fabs(phi.deriv1(3.0 - eps)) < 1e-10);
    CHECK(std::fabs(phi.deriv2(3.0 - eps)) < 1e-4);
    // derivative identities at an interior point (finite differences)
    const double x = 0.3;
    const double fd1 = (phi.value(x + eps) - phi.value(x - eps)) / (2.0 * eps);
    const double fd2 = (phi.deriv1(x + eps) - phi.deriv1(x - eps)) / (2.0 * eps);
    CHECK(phi.deriv1(x) == doctest::Approx(fd1).epsilon(1e-8));
    CHECK(phi.deriv2(x) == doctest::Approx(fd2).epsilon(1e-8));
    CHECK(default_bump_dictionary().size() == 15);
}

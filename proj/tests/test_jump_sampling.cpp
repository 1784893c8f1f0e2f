#include <doctest.h>

#include <cmath>

#include "jumpflow/jumps.hpp"

using namespace jumpflow;

TEST_CASE("zero intensity yields no events") {
    CounterRng rng = CounterRng::substream(1, 0);
    const JumpList jl = sample_jumps(MarkMeasure(), 1.0, rng);
    CHECK(jl.events.empty());
}

TEST_CASE("event times are strictly increasing and within the horizon") {
    CounterRng rng = CounterRng::substream(42, 0);
    const JumpList jl = sample_jumps(MarkMeasure::scaled_dirac(50.0, 1.0), 2.0, rng);
    REQUIRE(jl.events.size() > 10);
    for (std::size_t i = 0; i < jl.events.size(); ++i) {
        CHECK(jl.events[i].time > 0.0);
        CHECK(jl.events[i].time < 2.0);
        if (i > 0) CHECK(jl.events[i].time > jl.events[i - 1].time);
    }
}

TEST_CASE("count follows Poisson(T nu(U)): mean and variance") {
    // nu = 2 delta_1, T = 1: mean 2, equidispersed
    const int reps = 100000;
    double s1 = 0.0, s2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        CounterRng rng = CounterRng::substream(777, static_cast<std::uint64_t>(r));
        const JumpList jl = sample_jumps(MarkMeasure::scaled_dirac(2.0, 1.0), 1.0, rng);
        const double k = static_cast<double>(jl.events.size());
        s1 += k;
        s2 += k * k;
    }
    const double mean = s1 / reps;
    const double var = s2 / reps - mean * mean;
    const double se_mean = std::sqrt(2.0 / reps);
    CHECK(std::fabs(mean - 2.0) <= 3.0 * se_mean);
    // Var(K) = lambda; SE of the sample variance ~ sqrt((mu4 - var^2)/n),
    // mu4 = lambda(1 + 3 lambda) + ... use a generous 5-sigma window
    CHECK(std::fabs(var - 2.0) <= 5.0 * std::sqrt((2.0 + 6.0 * 4.0) / reps));
}

TEST_CASE("marks follow nu / nu(U)") {
    // nu = delta_{-1} + delta_{+1}: each atom with probability 1/2
    MarkMeasure nu({{{-1.0}, 1.0}, {{1.0}, 1.0}});
    std::size_t total = 0, first = 0;
    for (int r = 0; r < 20000; ++r) {
        CounterRng rng = CounterRng::substream(901, static_cast<std::uint64_t>(r));
        const JumpList jl = sample_jumps(nu, 1.0, rng);
        for (const auto& e : jl.events) {
            ++total;
            first += e.atom_index == 0 ? 1 : 0;
        }
    }
    REQUIRE(total > 10000);
    const double p = static_cast<double>(first) / static_cast<double>(total);
    const double se = std::sqrt(0.25 / static_cast<double>(total));
    CHECK(std::fabs(p - 0.5) <= 3.0 * se);
}

TEST_CASE("sampling is deterministic given the stream") {
    CounterRng a = CounterRng::substream(5, 9);
    CounterRng b = CounterRng::substream(5, 9);
    const JumpList ja = sample_jumps(MarkMeasure::scaled_dirac(3.0, 0.5), 4.0, a);
    const JumpList jb = sample_jumps(MarkMeasure::scaled_dirac(3.0, 0.5), 4.0, b);
    REQUIRE(ja.events.size() == jb.events.size());
    for (std::size_t i = 0; i < ja.events.size(); ++i) {
        CHECK(ja.events[i].time == jb.events[i].time);
        CHECK(ja.events[i].atom_index == jb.events[i].atom_index);
    }
}

TEST_CASE("preconditions") {
    CounterRng rng = CounterRng::substream(0, 0);
    CHECK_THROWS_AS(sample_jumps(MarkMeasure(), 0.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_jumps(MarkMeasure(), -1.0, rng), std::invalid_argument);
}

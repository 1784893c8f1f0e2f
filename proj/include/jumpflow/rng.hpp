#pragma once

#include <cstdint>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace jumpflow {

// Counter-based pseudo-random stream.
//
// Output k of a stream is mix64(key + (k+1)*GAMMA), the SplitMix64
// construction keyed per stream. Streams derived from (master_seed,
// stream_id) are statistically independent, support random access, and
// never share state, so ensembles are reproducible under any parallel
// schedule.
class CounterRng {
public:
    CounterRng() = default;
    CounterRng(std::uint64_t key, std::uint64_t counter = 0) noexcept
        : key_(key), counter_(counter) {}

    static std::uint64_t mix64(std::uint64_t z) noexcept {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    // Child stream for (master_seed, stream_id). Used per path, per
    // experiment arm, etc.
    static CounterRng substream(std::uint64_t master_seed, std::uint64_t stream_id) noexcept {
        const std::uint64_t k =
            mix64(mix64(master_seed + 0x9E3779B97F4A7C15ULL) ^
                  (stream_id * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
        return CounterRng(k);
    }

    std::uint64_t next_u64() noexcept {
        counter_ += 0x9E3779B97F4A7C15ULL;
        return mix64(key_ + counter_);
    }

    // Uniform on the open interval (0,1): 53-bit mantissa offset by half
    // an ulp so 0 and 1 are never returned.
    double next_uniform() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal by the inverse-CDF method (one uniform per draw).
    double next_normal() noexcept;

    // Unit-rate exponential.
    double next_exponential() noexcept { return -std::log(next_uniform()); }

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

// Inverse of the standard normal CDF, Wichura's AS 241 (PPND16),
// accurate to ~1e-15 over (0,1).
double inverse_normal_cdf(double p);

// Standard normal CDF (for test functionals and oracles).
inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

inline double CounterRng::next_normal() noexcept {
    return inverse_normal_cdf(next_uniform());
}

// Deterministic seed derivation for named experiment arms.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t tag) noexcept {
    return CounterRng::mix64(master_seed * 0x9E3779B97F4A7C15ULL + tag + 0x2545F4914F6CDD1DULL);
}

} // namespace jumpflow

#include "jumpflow/jumps.hpp"

#include <stdexcept>

namespace jumpflow {

JumpList sample_jumps(const MarkMeasure& nu, double horizon, CounterRng& rng) {
    if (!(horizon > 0.0)) throw std::invalid_argument("sample_jumps: horizon must be > 0");
    JumpList out;
    out.horizon = horizon;
    const double rate = nu.total_mass();
    if (rate == 0.0) return out;

    double t = 0.0;
    for (;;) {
        double gap = rng.next_exponential() / rate;
        // Exact ties are probability-zero; resample so times stay
        // strictly increasing.
        while (t + gap <= t) gap = rng.next_exponential() / rate;
        t += gap;
        if (t >= horizon) break;
        const std::size_t k = nu.sample_index(rng.next_uniform());
        out.events.push_back(JumpEvent{t, k});
    }
    return out;
}

} // namespace jumpflow

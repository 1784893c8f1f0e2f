#pragma once

#include <cstddef>
#include <vector>

#include "jumpflow/mark_measure.hpp"
#include "jumpflow/rng.hpp"

namespace jumpflow {

struct JumpEvent {
    double time = 0.0;
    std::size_t atom_index = 0;
};

// Realization of the marked Poisson process on [0, horizon]: event times
// strictly increasing, marks indexed into the atomic measure.
struct JumpList {
    std::vector<JumpEvent> events;
    double horizon = 0.0;
};

// Draw the events of N(dt,du) on [0,T] by exponential gaps at rate
// nu(U); marks are i.i.d. with probability w_k / nu(U). Zero total mass
// yields an empty list. Deterministic given the stream.
JumpList sample_jumps(const MarkMeasure& nu, double horizon, CounterRng& rng);

} // namespace jumpflow

#pragma once

#include "hawkes/model.hpp"
#include "hawkes/simulate.hpp"

namespace bench {

inline hawkes::HawkesModel demo_model() {
    hawkes::HawkesModel m;
    m.k = 2;
    m.mu = {0.1, 0.2};
    m.alpha = {0.5, 0.1, 0.2, 0.6};
    m.beta = {0.3, 0.2, 0.8, 1.0};
    return m;
}

inline hawkes::EventSequence demo_sequence(double horizon, std::uint64_t seed = 7) {
    hawkes::SimulationConfig cfg;
    cfg.horizon = horizon;
    cfg.seed = seed;
    return hawkes::simulate_thinning(demo_model(), cfg);
}

}  // namespace bench

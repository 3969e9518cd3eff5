#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hawkes/event_sequence.hpp"
#include "hawkes/model.hpp"

namespace hawkes {

struct SimulationConfig {
    double horizon = 0.0;          // days, > 0
    std::uint64_t seed = 0;
    std::size_t max_events = 10'000'000;
};

/// Name of the generator driving all simulations, recorded in output
/// metadata (mt19937-64 seeded through splitmix64).
const char* rng_algorithm();

/// Derives an independent stream seed for (seed, replicate) so replicate
/// batches can run with decorrelated generators.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t replicate);

/// Exact draw on [0, horizon] by Ogata thinning. The dominating rate is
/// the current total intensity, a valid bound because every channel
/// decays between events. Deterministic given config.seed. Throws
/// std::domain_error on unstable models and std::runtime_error when
/// max_events is exceeded.
EventSequence simulate_thinning(const HawkesModel& model, const SimulationConfig& config);

/// Equivalent draw by the cluster construction: Poisson(mu_i * T)
/// immigrants, each type-j event spawning Poisson(alpha_ij) type-i
/// children at exponential(beta_ij) lags, recursively, truncated at the
/// horizon. Serves as the distributional oracle for simulate_thinning.
EventSequence simulate_branching(const HawkesModel& model, const SimulationConfig& config);

/// Conditional intensity of every type sampled on a uniform grid,
/// suitable for plotting. Row format: t, lambda_1(t), ..., lambda_k(t).
std::vector<std::vector<double>> intensity_trace(const HawkesModel& model,
                                                 const EventSequence& seq,
                                                 double grid_step);

}  // namespace hawkes

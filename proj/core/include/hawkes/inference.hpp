#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hawkes/event_sequence.hpp"
#include "hawkes/likelihood.hpp"
#include "hawkes/model.hpp"

namespace hawkes {

struct MapOptions {
    int n_starts = 8;
    std::uint64_t seed = 0;
    LikelihoodMode mode = LikelihoodMode::Facilitated;
    int max_iterations = 500;
    double gradient_tolerance = 1e-6;  // transformed scale
};

struct MapStartTrace {
    bool converged = false;
    double log_posterior = 0.0;
    double gradient_norm = 0.0;
    int iterations = 0;
};

struct MapResult {
    HawkesModel model;
    double log_posterior = 0.0;
    double gradient_norm = 0.0;  // transformed scale, at the optimum
    bool converged = false;
    std::vector<MapStartTrace> starts;
    std::vector<std::string> warnings;
};

/// Multi-start quasi-Newton ascent of the log-posterior on transformed
/// coordinates; starts drawn from the priors, best local optimum wins.
/// Deterministic given opts.seed. Types with no events are flagged and
/// their baseline pinned near the prior mode.
MapResult fit_map(const EventSequence& seq, const PriorSpec& priors, const MapOptions& opts);

struct SampleOptions {
    int n_samples = 5000;  // kept draws per run (split across chains)
    int n_warmup = 5000;   // warmup per chain
    int n_chains = 4;
    std::uint64_t seed = 0;
    LikelihoodMode mode = LikelihoodMode::Facilitated;
    double target_acceptance = 0.23;
    std::optional<HawkesModel> init;  // defaults to fit_map optimum
};

struct PosteriorChain {
    int k = 2;
    std::vector<std::vector<double>> draws;  // natural scale, canonical order
    std::vector<double> log_posts;
    double acceptance_rate = 0.0;
    int n_warmup = 0;
    int n_kept = 0;
    LikelihoodMode mode = LikelihoodMode::Facilitated;
    std::vector<double> per_chain_acceptance;
    std::vector<std::string> warnings;
    bool diagnostics_ok = true;
};

/// Adaptive random-walk Metropolis on transformed coordinates, jointly
/// updating all parameters with a proposal covariance adapted during
/// warmup toward target_acceptance. Chains run from stream seeds
/// derived from (seed, chain index) and are merged in that order, so
/// results are deterministic given seed.
PosteriorChain sample_posterior(const EventSequence& seq, const PriorSpec& priors,
                                const SampleOptions& opts);

struct ParamSummary {
    struct Entry {
        std::string name;
        double mean = 0.0;
        double q025 = 0.0;
        double q975 = 0.0;
    };
    std::vector<Entry> params;       // canonical order
    // Per (i,j) channel, row-major. Both timescale conventions are
    // emitted: the posterior mean of 1/beta and 1/(posterior mean of beta).
    std::vector<double> timescale_mean_inverse;
    std::vector<double> timescale_inverse_mean;
    // alpha channel flagged not significant when its 2.5% quantile
    // rounds to 0.000 at three decimals.
    std::vector<bool> alpha_significant;
};

/// Empirical means and central 95% intervals (type-7 linear
/// interpolation of order statistics). Requires >= 100 kept draws.
ParamSummary summarize(const PosteriorChain& chain);

/// Type-7 quantile of a sample (linear interpolation of order
/// statistics); exposed for reuse in reports and tests.
double quantile_type7(std::vector<double> values, double p);

}  // namespace hawkes

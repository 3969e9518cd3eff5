#pragma once

#include <vector>

#include "hawkes/event_sequence.hpp"
#include "hawkes/model.hpp"

namespace hawkes {

/// Independent priors on the parameter blocks:
///   beta_ij ~ half-normal(0, beta_scale)
///   alpha_ij ~ uniform(0, 1)
///   mu_i ~ half-Cauchy(0, mu_scale)
/// Support additionally requires spectral_radius(alpha) < 1 so every
/// in-support model is a valid stable HawkesModel.
struct PriorSpec {
    double beta_scale = 1.0;
    double mu_scale = 5.0;
};

enum class LikelihoodMode { Exact, Facilitated };

/// Log-likelihood with the compensator in closed form:
///   sum_k log lambda(t_k) - sum_j mu_j T
///   - sum_ij alpha_ij sum_{k in type j} (1 - exp(-beta_ij (T - t_k))).
double log_likelihood_exact(const HawkesModel& model, const EventSequence& seq);

/// Long-horizon approximation: each truncated kernel integral
/// (1 - exp(-beta (T - t_k))) replaced by 1, so the alpha part of the
/// compensator becomes sum_ij alpha_ij n^j. Never exceeds the exact
/// value when alpha >= 0.
double log_likelihood_facilitated(const HawkesModel& model, const EventSequence& seq);

double log_likelihood(const HawkesModel& model, const EventSequence& seq, LikelihoodMode mode);

/// Sum of log prior densities over all k + 2k^2 parameters. Returns
/// -infinity outside the support (never throws for that), so samplers
/// can reject naturally.
double log_prior(const HawkesModel& model, const PriorSpec& priors);

double log_posterior(const HawkesModel& model, const PriorSpec& priors,
                     const EventSequence& seq, LikelihoodMode mode);

/// Analytic gradient of log_posterior with respect to the natural-scale
/// parameters, in canonical pack() order. Only valid in the interior of
/// the support; throws std::domain_error on the boundary/outside.
std::vector<double> grad_log_posterior(const HawkesModel& model, const PriorSpec& priors,
                                       const EventSequence& seq, LikelihoodMode mode);

// ---- transformed coordinates (log mu, logit alpha, log beta) ----
// Optimization and sampling operate on these to keep iterates interior.

std::vector<double> to_transformed(const std::vector<double>& natural, int k);
std::vector<double> from_transformed(const std::vector<double>& theta, int k);

/// d(natural)/d(transformed) evaluated at natural: mu for log blocks,
/// alpha(1-alpha) for the logit block.
std::vector<double> transform_scales(const std::vector<double>& natural, int k);

/// log |d(natural)/d(transformed)|, the change-of-variables term a
/// sampler on transformed coordinates must add to target the
/// natural-scale posterior.
double log_transform_jacobian(const std::vector<double>& natural, int k);

/// Gradient of log_transform_jacobian with respect to the transformed
/// coordinates.
std::vector<double> grad_log_transform_jacobian(const std::vector<double>& natural, int k);

}  // namespace hawkes

#pragma once

#include <vector>

#include "hawkes/event_sequence.hpp"
#include "hawkes/model.hpp"

namespace hawkes {

/// Time-rescaling residual report for one event type.
struct GofReport {
    int type = 0;            // 0-based
    std::size_t n = 0;       // events of this type
    std::vector<double> taus;            // rescaled event times, strictly increasing
    double tau_horizon = 0.0;            // type compensator at the horizon
    // Deviation curve N(tau) - tau evaluated at the events, raw scale.
    std::vector<double> deviation;       // k - tau_k
    // Normalized curve: u_k = tau_k / tau_horizon vs k/n - u_k.
    std::vector<double> u;
    std::vector<double> normalized_deviation;
    double ks_statistic = 0.0;
    double band_halfwidth = 0.0;
    bool within_band = false;
    bool is_empty = false;   // type had no events; all vectors empty
};

/// Rescaled times tau_k = integral_0^{t_k} lambda_i(s) ds for every
/// type-i event, with the type-i compensator in closed form.
std::vector<double> rescale_times(const HawkesModel& model, const EventSequence& seq, int type);

/// Type-i compensator at an arbitrary time t (history strictly before t).
double compensator(const HawkesModel& model, const EventSequence& seq, double t, int type);

/// Two-sided KS critical value at the given confidence level. Exact
/// small-sample table for n < 35 at levels 0.95 and 0.99; asymptotic
/// c(level)/sqrt(n) otherwise, with c from inverting the Kolmogorov
/// distribution (c(0.95) = 1.358, c(0.99) = 1.628).
double ks_band(std::size_t n, double level);

/// Full residual analysis at the given model, one report per type.
std::vector<GofReport> gof_report(const HawkesModel& model, const EventSequence& seq,
                                  double level = 0.95);

}  // namespace hawkes

#pragma once

#include <vector>

#include "hawkes/event_sequence.hpp"
#include "hawkes/model.hpp"

namespace hawkes {

/// Conditional intensity lambda_i(t) given the history of seq strictly
/// before t. Events at exactly t are excluded. Throws on type index out
/// of range, t outside [0, horizon], or non-finite t.
double intensity(const HawkesModel& model, const EventSequence& seq, double t, int type);

/// lambda_{mark(k)}(t_k) for every event k, history strictly before t_k.
/// Computed with the per-channel exponential decay recursion in
/// O(n k^2); agrees with naive per-event evaluation to ~1e-15.
std::vector<double> intensities_at_events(const HawkesModel& model, const EventSequence& seq);

}  // namespace hawkes

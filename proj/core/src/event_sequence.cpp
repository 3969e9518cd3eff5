#include "hawkes/event_sequence.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hawkes/version.hpp"

#ifndef HAWKES_VERSION_STRING
#define HAWKES_VERSION_STRING "v0.0.0-unknown"
#endif

namespace hawkes {

const char* version_string() { return HAWKES_VERSION_STRING; }

std::size_t EventSequence::count_of(int type) const {
    std::size_t n = 0;
    for (int m : marks) {
        if (m == type) ++n;
    }
    return n;
}

std::vector<std::size_t> EventSequence::counts(int num_types) const {
    std::vector<std::size_t> out(static_cast<std::size_t>(num_types), 0);
    for (int m : marks) {
        if (m >= 0 && m < num_types) ++out[static_cast<std::size_t>(m)];
    }
    return out;
}

void EventSequence::validate(int num_types) const {
    if (times.size() != marks.size()) {
        throw std::invalid_argument("EventSequence: times and marks length mismatch");
    }
    if (!source_ids.empty() && source_ids.size() != times.size()) {
        throw std::invalid_argument("EventSequence: source_ids length mismatch");
    }
    if (!std::isfinite(horizon) || horizon < 0.0) {
        throw std::invalid_argument("EventSequence: horizon must be finite and >= 0");
    }
    double prev = -1.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        if (!std::isfinite(t) || t < 0.0 || t > horizon) {
            throw std::invalid_argument("EventSequence: event time outside [0, horizon] at index " +
                                        std::to_string(i));
        }
        if (t <= prev) {
            throw std::invalid_argument("EventSequence: times not strictly increasing at index " +
                                        std::to_string(i));
        }
        prev = t;
        if (marks[i] < 0 || marks[i] >= num_types) {
            throw std::invalid_argument("EventSequence: mark out of range at index " +
                                        std::to_string(i));
        }
    }
}

}  // namespace hawkes

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace hawkes {

/// A realization of a marked temporal point process on [0, horizon].
///
/// Times are in days, strictly increasing. Marks are 0-based type
/// indices (the CSV schema uses 1-based marks; conversion happens at
/// the I/O boundary). Immutable by convention after construction.
struct EventSequence {
    std::vector<double> times;
    std::vector<int> marks;
    double horizon = 0.0;
    std::string origin_date;               // ISO-8601 calendar date of t = 0
    std::vector<std::string> source_ids;   // optional, same length as times when present

    std::size_t size() const noexcept { return times.size(); }
    bool empty() const noexcept { return times.empty(); }

    /// Number of events carrying the given 0-based mark.
    std::size_t count_of(int type) const;

    /// Per-type counts for a process with num_types marks.
    std::vector<std::size_t> counts(int num_types) const;

    /// Throws std::invalid_argument on any violated invariant:
    /// non-increasing times, mark out of [0, num_types), times outside
    /// [0, horizon], or mismatched vector lengths.
    void validate(int num_types) const;
};

}  // namespace hawkes

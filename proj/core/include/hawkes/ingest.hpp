#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hawkes/event_sequence.hpp"

namespace hawkes {

enum class OutcomeClass { DieAtScene, Live };

struct IncidentRecord {
    std::string source_id;
    std::string date;  // ISO-8601
    std::string outcome_raw;
    OutcomeClass outcome_class = OutcomeClass::Live;
};

/// Label -> class mapping. Lookup is case-insensitive on trimmed
/// labels; unmapped labels are an explicit error, never a silent
/// default.
class OutcomeMap {
  public:
    /// The mapping shipped with the repo (see data/outcome_map.csv).
    static OutcomeMap builtin();
    /// Two-column CSV `label,class` with class in {die_at_scene, live}.
    static OutcomeMap load(const std::string& path);

    void add(const std::string& label, OutcomeClass cls);
    /// Throws std::invalid_argument naming the label when unmapped or empty.
    OutcomeClass classify(const std::string& outcome_raw) const;

  private:
    std::map<std::string, OutcomeClass> entries_;
};

struct SchemaOptions {
    std::string id_column = "source_id";
    std::string date_column = "date";
    std::string outcome_column = "outcome";
    double horizon_override = -1.0;  // < 0: horizon = last event time
};

struct IngestResult {
    EventSequence seq;
    std::vector<IncidentRecord> records;   // accepted rows, event order
    std::vector<std::string> log;          // rejections and warnings
    std::size_t n_rejected = 0;
    std::vector<std::size_t> class_counts; // {die_at_scene, live}
};

/// Loads incident CSV (`source_id,date,outcome` by default), classifies
/// outcomes, sorts ascending, maps calendar dates to days from the
/// first incident, and breaks same-day ties with +0.25-day offsets in
/// stable input order. Rows with unparseable dates or unmapped outcomes
/// are rejected and logged. Throws std::runtime_error when the file
/// cannot be opened.
IngestResult load_incidents(const std::string& path, const OutcomeMap& outcomes,
                            const SchemaOptions& schema = {});

/// Splits by calendar date: events dated before cutoff_date go to the
/// first sequence, events dated on or after it to the second. Each
/// subset is re-anchored to its own t = 0 and horizon; inter-event gaps
/// within a subset are preserved exactly.
std::pair<EventSequence, EventSequence> split_period(const EventSequence& seq,
                                                     const std::string& cutoff_date = "2000-01-01");

/// Canonical event CSV (`t_days,mark,source_id,date`), 1-based marks.
/// A non-empty comment is written as an extra leading `# ...` line.
void export_events_csv(const EventSequence& seq, const std::string& path,
                       const std::string& comment = "");
EventSequence import_events_csv(const std::string& path);

// Calendar helpers (proleptic Gregorian, day resolution).
long days_from_civil(int y, int m, int d);
void civil_from_days(long z, int& y, int& m, int& d);
/// Parses "YYYY-MM-DD" to a day serial; throws std::invalid_argument.
long parse_iso_date(const std::string& s);
std::string format_iso_date(long serial);

}  // namespace hawkes

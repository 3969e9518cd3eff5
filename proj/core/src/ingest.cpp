#include "hawkes/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hawkes/csv.hpp"

namespace hawkes {

// days_from_civil / civil_from_days: standard proleptic Gregorian
// day-count algorithm (Hinnant), epoch 1970-01-01.
long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2u) / 5u + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

void civil_from_days(long z, int& y, int& m, int& d) {
    z += 719468;
    const long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long yy = static_cast<long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

long parse_iso_date(const std::string& s) {
    int y = 0, m = 0, d = 0;
    char extra = 0;
    if (std::sscanf(s.c_str(), "%d-%d-%d%c", &y, &m, &d, &extra) != 3 || m < 1 || m > 12 ||
        d < 1 || d > 31) {
        throw std::invalid_argument("unparseable ISO date: '" + s + "'");
    }
    return days_from_civil(y, m, d);
}

std::string format_iso_date(long serial) {
    int y, m, d;
    civil_from_days(serial, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
    return buf;
}

namespace {

std::string normalize_label(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    std::string out = s.substr(b, e - b);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

OutcomeMap OutcomeMap::builtin() {
    OutcomeMap m;
    // death at the immediate scene of the attack
    for (const char* label :
         {"suicide at scene", "killed by police at scene", "killed on scene by police",
          "killed at scene", "died at scene", "shot by police at scene",
          "killed by armed bystander at scene", "suicide on site", "die at the scene"}) {
        m.add(label, OutcomeClass::DieAtScene);
    }
    // everything else: survived the immediate confrontation
    for (const char* label :
         {"arrested", "apprehended", "fled", "escaped", "surrendered", "suicide after leaving scene",
          "suicide later", "died in custody", "died in prison", "executed", "arrested; later executed",
          "died of injuries later", "killed by police after fleeing", "live", "alive in prison"}) {
        m.add(label, OutcomeClass::Live);
    }
    return m;
}

OutcomeMap OutcomeMap::load(const std::string& path) {
    OutcomeMap m;
    const auto rows = csv::read_file(path);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() < 2) continue;
        const std::string label = normalize_label(rows[r][0]);
        const std::string cls = normalize_label(rows[r][1]);
        if (r == 0 && label == "label") continue;  // header
        if (cls == "die_at_scene") {
            m.add(label, OutcomeClass::DieAtScene);
        } else if (cls == "live") {
            m.add(label, OutcomeClass::Live);
        } else {
            throw std::invalid_argument("outcome map " + path + ": unknown class '" + cls +
                                        "' for label '" + label + "'");
        }
    }
    return m;
}

void OutcomeMap::add(const std::string& label, OutcomeClass cls) {
    entries_[normalize_label(label)] = cls;
}

OutcomeClass OutcomeMap::classify(const std::string& outcome_raw) const {
    const std::string key = normalize_label(outcome_raw);
    if (key.empty()) throw std::invalid_argument("empty outcome label");
    const auto it = entries_.find(key);
    if (it == entries_.end()) {
        throw std::invalid_argument("unmapped outcome label: '" + outcome_raw + "'");
    }
    return it->second;
}

IngestResult load_incidents(const std::string& path, const OutcomeMap& outcomes,
                            const SchemaOptions& schema) {
    const auto rows = csv::read_file(path);
    IngestResult result;
    result.class_counts.assign(2, 0);
    if (rows.empty()) {
        result.log.push_back("warning: empty file " + path);
        result.seq.horizon = 0.0;
        return result;
    }

    const auto& header = rows[0];
    const auto find_col = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (normalize_label(header[i]) == normalize_label(name)) return static_cast<int>(i);
        }
        return -1;
    };
    const int c_date = find_col(schema.date_column);
    const int c_outcome = find_col(schema.outcome_column);
    const int c_id = find_col(schema.id_column);
    if (c_date < 0 || c_outcome < 0) {
        throw std::runtime_error(path + ": required columns '" + schema.date_column + "' and '" +
                                 schema.outcome_column + "' not found in header");
    }

    struct Row {
        long day;
        std::size_t order;  // stable input order for tie-breaking
        IncidentRecord rec;
    };
    std::vector<Row> accepted;
    std::set<std::string> seen_ids;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const auto field = [&](int c) -> std::string {
            return (c >= 0 && static_cast<std::size_t>(c) < row.size()) ? row[c] : std::string();
        };
        IncidentRecord rec;
        rec.source_id = field(c_id);
        rec.date = field(c_date);
        rec.outcome_raw = field(c_outcome);
        long day;
        try {
            day = parse_iso_date(rec.date);
        } catch (const std::exception& e) {
            result.log.push_back("row " + std::to_string(r + 1) + " rejected: " + e.what());
            ++result.n_rejected;
            continue;
        }
        try {
            rec.outcome_class = outcomes.classify(rec.outcome_raw);
        } catch (const std::exception& e) {
            result.log.push_back("row " + std::to_string(r + 1) + " rejected: " + e.what());
            ++result.n_rejected;
            continue;
        }
        if (!rec.source_id.empty() && !seen_ids.insert(rec.source_id).second) {
            result.log.push_back("warning: duplicate source_id '" + rec.source_id + "' at row " +
                                 std::to_string(r + 1));
        }
        accepted.push_back({day, r, std::move(rec)});
    }

    if (accepted.empty()) {
        result.log.push_back("warning: no usable rows in " + path);
        result.seq.horizon = std::max(schema.horizon_override, 0.0);
        return result;
    }

    std::stable_sort(accepted.begin(), accepted.end(), [](const Row& a, const Row& b) {
        return a.day != b.day ? a.day < b.day : a.order < b.order;
    });

    const long origin = accepted.front().day;
    result.seq.origin_date = format_iso_date(origin);
    for (std::size_t i = 0; i < accepted.size(); ++i) {
        const auto& row = accepted[i];
        // same-day ties: +0.25-day offsets in stable input order; with
        // more than 4 events on one day fall back to even spacing
        std::size_t dup = 0, total_day = 1;
        while (dup < i && accepted[i - dup - 1].day == row.day) ++dup;
        for (std::size_t j = i + 1; j < accepted.size() && accepted[j].day == row.day; ++j) {
            ++total_day;
        }
        total_day += dup;
        double offset;
        if (total_day <= 4) {
            offset = 0.25 * static_cast<double>(dup);
        } else {
            offset = static_cast<double>(dup) / static_cast<double>(total_day);
            if (dup == 0) {
                result.log.push_back("warning: " + std::to_string(total_day) + " events on " +
                                     row.rec.date + "; using even sub-day spacing");
            }
        }
        result.seq.times.push_back(static_cast<double>(row.day - origin) + offset);
        result.seq.marks.push_back(row.rec.outcome_class == OutcomeClass::DieAtScene ? 0 : 1);
        result.seq.source_ids.push_back(row.rec.source_id);
        result.records.push_back(row.rec);
        ++result.class_counts[row.rec.outcome_class == OutcomeClass::DieAtScene ? 0 : 1];
    }
    result.seq.horizon =
        schema.horizon_override >= 0.0 ? schema.horizon_override : result.seq.times.back();
    if (result.seq.horizon < result.seq.times.back()) {
        throw std::runtime_error("horizon override " + std::to_string(schema.horizon_override) +
                                 " is earlier than the last event");
    }
    result.log.push_back("loaded " + std::to_string(result.seq.size()) + " events (" +
                         std::to_string(result.class_counts[0]) + " die-at-scene, " +
                         std::to_string(result.class_counts[1]) + " live), horizon " +
                         std::to_string(result.seq.horizon) + " days, origin " +
                         result.seq.origin_date);
    return result;
}

std::pair<EventSequence, EventSequence> split_period(const EventSequence& seq,
                                                     const std::string& cutoff_date) {
    if (seq.origin_date.empty()) {
        throw std::invalid_argument("split_period: sequence lacks origin_date metadata");
    }
    const long origin = parse_iso_date(seq.origin_date);
    const long cutoff = parse_iso_date(cutoff_date);

    EventSequence pre, post;
    std::vector<double> pre_times, post_times;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const long day = origin + static_cast<long>(std::floor(seq.times[i]));
        const bool is_pre = day < cutoff;
        auto& target = is_pre ? pre : post;
        auto& times = is_pre ? pre_times : post_times;
        times.push_back(seq.times[i]);
        target.marks.push_back(seq.marks[i]);
        if (!seq.source_ids.empty()) target.source_ids.push_back(seq.source_ids[i]);
    }

    // re-anchor each subset to its first event's day so dates stay
    // derivable from origin + floor(t); gaps are preserved exactly
    const auto anchor = [&](EventSequence& sub, std::vector<double>& times, double tail) {
        if (times.empty()) {
            sub.horizon = 0.0;
            return;
        }
        const double shift = std::floor(times.front());
        sub.origin_date = format_iso_date(origin + static_cast<long>(shift));
        sub.times.reserve(times.size());
        for (double t : times) sub.times.push_back(t - shift);
        sub.horizon = std::max(sub.times.back(), tail - shift);
    };
    anchor(pre, pre_times, 0.0);
    anchor(post, post_times, seq.horizon);
    return {std::move(pre), std::move(post)};
}

void export_events_csv(const EventSequence& seq, const std::string& path,
                       const std::string& comment) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    if (!comment.empty()) out << comment << "\n";
    const bool has_origin = !seq.origin_date.empty();
    const long origin = has_origin ? parse_iso_date(seq.origin_date) : 0;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", seq.horizon);
    out << "# origin=" << (has_origin ? seq.origin_date : std::string("n/a")) << " horizon=" << buf
        << "\n";
    out << "t_days,mark,source_id,date\n";
    for (std::size_t i = 0; i < seq.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", seq.times[i]);
        out << buf << "," << (seq.marks[i] + 1) << ",";
        if (!seq.source_ids.empty()) out << csv::escape(seq.source_ids[i]);
        out << ",";
        if (has_origin) {
            out << format_iso_date(origin + static_cast<long>(std::floor(seq.times[i])));
        }
        out << "\n";
    }
}

EventSequence import_events_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    EventSequence seq;
    double horizon = -1.0;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto pos = line.find("horizon=");
            if (pos != std::string::npos) horizon = std::stod(line.substr(pos + 8));
            const auto opos = line.find("origin=");
            if (opos != std::string::npos) {
                std::string o = line.substr(opos + 7);
                o = o.substr(0, o.find(' '));
                if (o != "n/a") seq.origin_date = o;
            }
            continue;
        }
        const auto fields = csv::split_line(line);
        if (!header_seen) {
            header_seen = true;
            if (!fields.empty() && fields[0] == "t_days") continue;
        }
        if (fields.size() < 2) continue;
        seq.times.push_back(std::stod(fields[0]));
        seq.marks.push_back(std::stoi(fields[1]) - 1);
        if (fields.size() >= 3) seq.source_ids.push_back(fields[2]);
    }
    if (!seq.source_ids.empty() && seq.source_ids.size() != seq.times.size()) {
        seq.source_ids.clear();
    }
    seq.horizon = horizon >= 0.0 ? horizon : (seq.times.empty() ? 0.0 : seq.times.back());
    return seq;
}

}  // namespace hawkes

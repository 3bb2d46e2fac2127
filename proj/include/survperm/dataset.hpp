#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace survperm {

/// Raised when an input file (dataset CSV, simulation config) is malformed.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

/// One subject: follow-up time in months, whether the event was observed
/// (false = right-censored), and treatment arm (0 = control, 1 = experimental).
struct Observation {
    double time = 0.0;
    bool event = false;
    int arm = 0;
};

/// A validated two-arm right-censored dataset. Immutable after construction.
class TwoArmDataset {
public:
    static TwoArmDataset from_observations(std::vector<Observation> obs);

    const std::vector<Observation>& observations() const { return obs_; }
    int n0() const { return n0_; }
    int n1() const { return n1_; }
    int size() const { return static_cast<int>(obs_.size()); }

    std::vector<Observation> arm_observations(int arm) const;
    std::vector<int> arm_labels() const;

private:
    TwoArmDataset() = default;
    std::vector<Observation> obs_;
    int n0_ = 0;
    int n1_ = 0;
};

/// Parses CSV rows `time,event,arm` (header optional, LF or CRLF).
/// Throws parse_error naming the offending line on malformed input.
TwoArmDataset parse_dataset(std::istream& in);
TwoArmDataset load_dataset(const std::string& path);

/// Counts at one distinct event time t: at-risk, events, and censorings in
/// [t, t_next) split by arm. Subjects censored exactly at t count as at risk.
struct EventTableRow {
    double time = 0.0;
    int n0 = 0, n1 = 0, n = 0;
    int d0 = 0, d1 = 0, d = 0;
    int l0 = 0, l1 = 0;
};

/// Per-event-time tabulation plus the censorings falling before the first
/// event time (the "virtual row 0" interval, where score sums are empty).
struct EventTable {
    std::vector<EventTableRow> rows;
    int pre_event_censored0 = 0;
    int pre_event_censored1 = 0;
};

/// Builds the event table in increasing time order. Throws std::runtime_error
/// ("no events") when the dataset is entirely censored.
EventTable build_event_table(const TwoArmDataset& data);

}  // namespace survperm

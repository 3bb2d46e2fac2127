#include "survperm/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

namespace survperm {

namespace {

std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(trimmed(field));
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* begin = s.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end == begin + s.size();
}

}  // namespace

TwoArmDataset TwoArmDataset::from_observations(std::vector<Observation> obs) {
    if (obs.empty()) throw parse_error("empty dataset");
    TwoArmDataset data;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        const Observation& o = obs[i];
        if (!(o.time >= 0.0) || !std::isfinite(o.time)) {
            throw parse_error("observation " + std::to_string(i + 1) +
                              ": negative time or non-finite time");
        }
        if (o.arm != 0 && o.arm != 1) {
            throw parse_error("observation " + std::to_string(i + 1) +
                              ": arm must be 0 or 1");
        }
        if (o.arm == 0) ++data.n0_; else ++data.n1_;
    }
    if (data.n0_ == 0 || data.n1_ == 0) {
        throw parse_error(std::string("single-arm dataset: no subjects on arm ") +
                          (data.n0_ == 0 ? "0" : "1"));
    }
    data.obs_ = std::move(obs);
    return data;
}

std::vector<Observation> TwoArmDataset::arm_observations(int arm) const {
    std::vector<Observation> out;
    out.reserve(arm == 0 ? n0_ : n1_);
    for (const Observation& o : obs_) {
        if (o.arm == arm) out.push_back(o);
    }
    return out;
}

std::vector<int> TwoArmDataset::arm_labels() const {
    std::vector<int> labels(obs_.size());
    for (std::size_t i = 0; i < obs_.size(); ++i) labels[i] = obs_[i].arm;
    return labels;
}

TwoArmDataset parse_dataset(std::istream& in) {
    std::vector<Observation> obs;
    std::string line;
    int line_no = 0;
    bool saw_header_candidate = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trimmed(line).empty()) continue;
        std::vector<std::string> fields = split_csv(line);

        // A first row whose time field is not numeric is taken as the header.
        double t;
        if (obs.empty() && !saw_header_candidate && !fields.empty() &&
            !parse_double(fields[0], t)) {
            saw_header_candidate = true;
            continue;
        }

        const std::string where = "line " + std::to_string(line_no);
        if (fields.size() != 3) {
            throw parse_error(where + ": expected 3 fields (time,event,arm), got " +
                              std::to_string(fields.size()));
        }
        Observation o;
        if (!parse_double(fields[0], o.time) || !std::isfinite(o.time)) {
            throw parse_error(where + ": invalid time '" + fields[0] + "'");
        }
        if (o.time < 0.0) {
            throw parse_error(where + ": negative time " + fields[0]);
        }
        if (fields[1] == "0") o.event = false;
        else if (fields[1] == "1") o.event = true;
        else throw parse_error(where + ": event must be 0 or 1, got '" + fields[1] + "'");
        if (fields[2] == "0") o.arm = 0;
        else if (fields[2] == "1") o.arm = 1;
        else throw parse_error(where + ": arm must be 0 or 1, got '" + fields[2] + "'");
        obs.push_back(o);
    }
    if (obs.empty()) throw parse_error("empty dataset: no data rows");
    return TwoArmDataset::from_observations(std::move(obs));
}

TwoArmDataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file: " + path);
    try {
        return parse_dataset(in);
    } catch (const parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

EventTable build_event_table(const TwoArmDataset& data) {
    const std::vector<Observation>& obs = data.observations();
    std::vector<int> order(obs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return obs[a].time < obs[b].time; });

    EventTable table;
    int at_risk0 = data.n0();
    int at_risk1 = data.n1();
    std::size_t i = 0;
    while (i < order.size()) {
        const double t = obs[order[i]].time;
        std::size_t j = i;
        int d0 = 0, d1 = 0, c0 = 0, c1 = 0;
        for (; j < order.size() && obs[order[j]].time == t; ++j) {
            const Observation& o = obs[order[j]];
            if (o.event) (o.arm == 0 ? d0 : d1)++;
            else (o.arm == 0 ? c0 : c1)++;
        }
        if (d0 + d1 > 0) {
            EventTableRow row;
            row.time = t;
            row.n0 = at_risk0;
            row.n1 = at_risk1;
            row.n = at_risk0 + at_risk1;
            row.d0 = d0;
            row.d1 = d1;
            row.d = d0 + d1;
            row.l0 = c0;
            row.l1 = c1;
            table.rows.push_back(row);
        } else if (table.rows.empty()) {
            table.pre_event_censored0 += c0;
            table.pre_event_censored1 += c1;
        } else {
            table.rows.back().l0 += c0;
            table.rows.back().l1 += c1;
        }
        at_risk0 -= d0 + c0;
        at_risk1 -= d1 + c1;
        i = j;
    }
    if (table.rows.empty()) throw std::runtime_error("no events in dataset");
    return table;
}

}  // namespace survperm

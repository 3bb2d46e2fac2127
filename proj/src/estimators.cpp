#include "survperm/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "survperm/numeric.hpp"

namespace survperm {

namespace {

// Shared survival-curve scan over (time, event) pairs sorted by time.
// Kaplan-Meier multiplies 1 - d/n, the Nelson-Aalen survival form
// exponentiates minus the cumulative hazard.
StepFunction survival_scan(std::vector<std::pair<double, bool>> pts, bool nelson_aalen) {
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<double> times, values;
    double s = 1.0;
    NeumaierSum cumhaz;
    std::size_t at_risk = pts.size();
    std::size_t i = 0;
    while (i < pts.size()) {
        const double t = pts[i].first;
        std::size_t j = i;
        int d = 0;
        for (; j < pts.size() && pts[j].first == t; ++j) d += pts[j].second ? 1 : 0;
        if (d > 0) {
            if (nelson_aalen) {
                cumhaz.add(static_cast<double>(d) / static_cast<double>(at_risk));
                s = std::exp(-cumhaz.value());
            } else {
                s *= 1.0 - static_cast<double>(d) / static_cast<double>(at_risk);
            }
            times.push_back(t);
            values.push_back(s);
        }
        at_risk -= j - i;
        i = j;
    }
    if (times.empty()) throw std::runtime_error("no events in dataset");
    return StepFunction(std::move(times), std::move(values));
}

std::vector<std::pair<double, bool>> to_points(std::span<const Observation> obs) {
    std::vector<std::pair<double, bool>> pts;
    pts.reserve(obs.size());
    for (const Observation& o : obs) pts.emplace_back(o.time, o.event);
    return pts;
}

}  // namespace

StepFunction kaplan_meier(std::span<const Observation> obs) {
    return survival_scan(to_points(obs), false);
}

StepFunction kaplan_meier(const TwoArmDataset& data) {
    return kaplan_meier(std::span<const Observation>(data.observations()));
}

StepFunction kaplan_meier(const EventTable& table) {
    std::vector<double> times, values;
    times.reserve(table.rows.size());
    values.reserve(table.rows.size());
    double s = 1.0;
    for (const EventTableRow& row : table.rows) {
        s *= 1.0 - static_cast<double>(row.d) / static_cast<double>(row.n);
        times.push_back(row.time);
        values.push_back(s);
    }
    return StepFunction(std::move(times), std::move(values));
}

StepFunction arm_kaplan_meier(const EventTable& table, int arm) {
    std::vector<double> times, values;
    double s = 1.0;
    for (const EventTableRow& row : table.rows) {
        const int d = arm == 0 ? row.d0 : row.d1;
        const int n = arm == 0 ? row.n0 : row.n1;
        if (d == 0) continue;
        s *= 1.0 - static_cast<double>(d) / static_cast<double>(n);
        times.push_back(row.time);
        values.push_back(s);
    }
    if (times.empty()) throw std::runtime_error("no events on arm " + std::to_string(arm));
    return StepFunction(std::move(times), std::move(values));
}

StepFunction nelson_aalen_survival(std::span<const Observation> obs) {
    return survival_scan(to_points(obs), true);
}

StepFunction nelson_aalen_survival(const TwoArmDataset& data) {
    return nelson_aalen_survival(std::span<const Observation>(data.observations()));
}

StepFunction nelson_aalen_survival(const EventTable& table) {
    std::vector<double> times, values;
    times.reserve(table.rows.size());
    values.reserve(table.rows.size());
    NeumaierSum cumhaz;
    for (const EventTableRow& row : table.rows) {
        cumhaz.add(static_cast<double>(row.d) / static_cast<double>(row.n));
        times.push_back(row.time);
        values.push_back(std::exp(-cumhaz.value()));
    }
    return StepFunction(std::move(times), std::move(values));
}

namespace {

// Kaplan-Meier estimate at tau for one arm plus its Greenwood variance.
// Once the estimate hits 0 its variance is taken as 0 (the Greenwood sum
// would divide by zero).
std::pair<double, double> arm_km_at(const EventTable& table, int arm, double tau) {
    double s = 1.0;
    NeumaierSum greenwood;
    for (const EventTableRow& row : table.rows) {
        if (row.time > tau) break;
        const int d = arm == 0 ? row.d0 : row.d1;
        const int n = arm == 0 ? row.n0 : row.n1;
        if (d == 0) continue;
        s *= 1.0 - static_cast<double>(d) / static_cast<double>(n);
        if (s == 0.0) return {0.0, 0.0};
        greenwood.add(static_cast<double>(d) /
                      (static_cast<double>(n) * static_cast<double>(n - d)));
    }
    return {s, s * s * greenwood.value()};
}

}  // namespace

MilestoneResult milestone_test(const EventTable& table, double max_time0, double max_time1,
                               double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw std::invalid_argument("milestone time must be positive and finite");
    }
    if (max_time0 < tau || max_time1 < tau) {
        throw std::runtime_error(
            "milestone not estimable: follow-up on arm " +
            std::string(max_time0 < tau ? "0" : "1") + " ends before the milestone time");
    }
    const auto [s0, var0] = arm_km_at(table, 0, tau);
    const auto [s1, var1] = arm_km_at(table, 1, tau);
    MilestoneResult r;
    r.tau = tau;
    r.s0_hat = s0;
    r.s1_hat = s1;
    const double var = var0 + var1;
    if (var <= 0.0) {
        throw std::runtime_error("milestone not estimable: zero variance on both arms");
    }
    r.se = std::sqrt(var);
    r.z = (s1 - s0) / r.se;
    r.p = normal_cdf(-r.z);
    return r;
}

MilestoneResult milestone_test(const TwoArmDataset& data, double tau) {
    const EventTable table = build_event_table(data);
    double max0 = 0.0, max1 = 0.0;
    for (const Observation& o : data.observations()) {
        double& m = o.arm == 0 ? max0 : max1;
        if (o.time > m) m = o.time;
    }
    return milestone_test(table, max0, max1, tau);
}

}  // namespace survperm

#include "survperm/wlrt.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "survperm/estimators.hpp"
#include "survperm/numeric.hpp"

namespace survperm {

std::pair<double, double> hypergeometric_moments(const EventTableRow& row) {
    const double n = row.n;
    const double e1 = row.d * row.n1 / n;
    double v1 = 0.0;
    if (row.n > 1) {
        v1 = static_cast<double>(row.n0) * row.n1 * row.d * (row.n - row.d) /
             (n * n * (n - 1.0));
    }
    return {e1, v1};
}

std::vector<MomentRow> moment_rows(const EventTable& table, std::span<const double> weights) {
    if (weights.size() != table.rows.size()) {
        throw std::invalid_argument("moment_rows: one weight per event time required");
    }
    std::vector<MomentRow> rows;
    rows.reserve(table.rows.size());
    for (std::size_t j = 0; j < table.rows.size(); ++j) {
        const EventTableRow& r = table.rows[j];
        const auto [e1, v1] = hypergeometric_moments(r);
        rows.push_back(MomentRow{r.time, static_cast<double>(r.d1), e1, v1, weights[j]});
    }
    return rows;
}

TestResult wlrt(const EventTable& table, const StepFunction& pooled_km, const WeightSpec& spec) {
    const std::vector<double> w = compute_weights(spec, table, pooled_km);
    const std::vector<MomentRow> rows = moment_rows(table, w);
    NeumaierSum stat, var;
    for (const MomentRow& r : rows) {
        stat.add(r.w * (r.o1 - r.e1));
        var.add(r.w * r.w * r.v1);
    }
    TestResult result;
    result.statistic = stat.value();
    result.variance = var.value();
    result.method = spec.label();
    if (!(result.variance > 0.0)) {
        throw std::runtime_error("degenerate variance: weighted log-rank variance is zero");
    }
    result.z = result.statistic / std::sqrt(result.variance);
    result.p = normal_cdf(result.z);
    return result;
}

TestResult wlrt(const TwoArmDataset& data, const WeightSpec& spec) {
    const EventTable table = build_event_table(data);
    return wlrt(table, kaplan_meier(table), spec);
}

namespace {

HazardRatioSummary summarize(const EventTable& table, std::span<const double> cutpoints,
                             double level) {
    if (!(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument("confidence level must lie strictly between 0 and 1");
    }
    for (std::size_t k = 0; k < cutpoints.size(); ++k) {
        if (!(cutpoints[k] > 0.0) || !std::isfinite(cutpoints[k])) {
            throw std::invalid_argument("cutpoints must be positive and finite");
        }
        if (k > 0 && !(cutpoints[k] > cutpoints[k - 1])) {
            throw std::invalid_argument("cutpoints must be strictly increasing");
        }
    }

    // Interval k covers (cutpoints[k-1], cutpoints[k]], the last one is open-ended.
    const std::size_t n_intervals = cutpoints.size() + 1;
    std::vector<NeumaierSum> oe(n_intervals), info(n_intervals);
    std::vector<int> events(n_intervals, 0);
    NeumaierSum oe_total, info_total;
    for (const EventTableRow& row : table.rows) {
        const auto [e1, v1] = hypergeometric_moments(row);
        std::size_t k = 0;
        while (k < cutpoints.size() && row.time > cutpoints[k]) ++k;
        oe[k].add(row.d1 - e1);
        info[k].add(v1);
        events[k] += row.d;
        oe_total.add(row.d1 - e1);
        info_total.add(v1);
    }

    HazardRatioSummary s;
    const double total_info = info_total.value();
    if (!(total_info > 0.0)) {
        throw std::runtime_error("degenerate variance: hazard ratio information is zero");
    }
    s.log_hr = oe_total.value() / total_info;
    s.theta_hat = std::exp(s.log_hr);
    const double q = normal_quantile(0.5 + level / 2.0);
    const double half_width = q / std::sqrt(total_info);
    s.ci_low = std::exp(s.log_hr - half_width);
    s.ci_high = std::exp(s.log_hr + half_width);

    s.intervals.reserve(n_intervals);
    for (std::size_t k = 0; k < n_intervals; ++k) {
        IntervalEstimate est;
        est.lower = k == 0 ? 0.0 : cutpoints[k - 1];
        est.upper = k < cutpoints.size() ? cutpoints[k]
                                         : std::numeric_limits<double>::infinity();
        est.information = info[k].value();
        est.events = events[k];
        if (est.information > 0.0) {
            est.theta = std::exp(oe[k].value() / est.information);
        } else {
            // No information: flagged and excluded; theta 1 contributes a
            // zero log term so including it cannot move the reconstruction.
            est.theta = 1.0;
            est.degenerate = true;
        }
        s.intervals.push_back(est);
    }
    return s;
}

}  // namespace

HazardRatioSummary peto_hazard_ratio(const EventTable& table, double level) {
    HazardRatioSummary s = summarize(table, {}, level);
    s.intervals.clear();
    return s;
}

HazardRatioSummary peto_hazard_ratio(const TwoArmDataset& data, double level) {
    return peto_hazard_ratio(build_event_table(data), level);
}

HazardRatioSummary interval_decomposition(const EventTable& table,
                                          std::span<const double> cutpoints, double level) {
    return summarize(table, cutpoints, level);
}

HazardRatioSummary interval_decomposition(const TwoArmDataset& data,
                                          std::span<const double> cutpoints, double level) {
    return summarize(build_event_table(data), cutpoints, level);
}

}  // namespace survperm

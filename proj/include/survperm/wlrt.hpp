#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "survperm/dataset.hpp"
#include "survperm/step_function.hpp"
#include "survperm/weights.hpp"

namespace survperm {

/// Observed/expected/variance of arm-1 events at one event time, plus the
/// weight applied there.
struct MomentRow {
    double time = 0.0;
    double o1 = 0.0;
    double e1 = 0.0;
    double v1 = 0.0;
    double w = 1.0;
};

struct TestResult {
    double statistic = 0.0;   // sum of w*(O - E)
    double variance = 0.0;    // sum of w^2 * V
    double z = 0.0;
    double p = 0.0;           // one-sided, small when arm 1 does better
    std::string method;
};

struct IntervalEstimate {
    double lower = 0.0;       // interval (lower, upper]
    double upper = 0.0;
    double theta = 0.0;       // hazard ratio within the interval
    double information = 0.0; // sum of V over the interval's event times
    int events = 0;
    bool degenerate = false;  // no information in the interval
};

struct HazardRatioSummary {
    double theta_hat = 0.0;
    double log_hr = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::vector<IntervalEstimate> intervals;
};

/// Conditional mean and variance of the arm-1 event count at one event time
/// (hypergeometric given the table margins). Variance is 0 when n = 1.
std::pair<double, double> hypergeometric_moments(const EventTableRow& row);

std::vector<MomentRow> moment_rows(const EventTable& table, std::span<const double> weights);

/// Weighted log-rank test: statistic sum w*(O-E), variance sum w^2*V,
/// p = Phi(z). Throws std::runtime_error on zero variance.
TestResult wlrt(const TwoArmDataset& data, const WeightSpec& spec);
TestResult wlrt(const EventTable& table, const StepFunction& pooled_km, const WeightSpec& spec);

/// exp(sum(O-E)/sum(V)) with a normal-approximation confidence interval.
HazardRatioSummary peto_hazard_ratio(const TwoArmDataset& data, double level = 0.95);
HazardRatioSummary peto_hazard_ratio(const EventTable& table, double level = 0.95);

/// Splits the hazard-ratio estimate into per-interval estimates at the given
/// cutpoints. The information-weighted geometric mean of the interval
/// estimates reconstructs the overall one exactly; zero-information
/// intervals are flagged degenerate and excluded.
HazardRatioSummary interval_decomposition(const TwoArmDataset& data,
                                          std::span<const double> cutpoints,
                                          double level = 0.95);
HazardRatioSummary interval_decomposition(const EventTable& table,
                                          std::span<const double> cutpoints,
                                          double level = 0.95);

}  // namespace survperm

#include "survperm/scores.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "survperm/numeric.hpp"
#include "survperm/serialize.hpp"

namespace survperm {

ScoreVector wilcoxon_scores(const TwoArmDataset& data) {
    const std::vector<Observation>& obs = data.observations();
    for (std::size_t i = 0; i < obs.size(); ++i) {
        if (!obs[i].event) {
            throw std::invalid_argument(
                "wilcoxon scores require fully observed data (observation " +
                std::to_string(i + 1) + " is censored); use gehan scores instead");
        }
    }
    // Longest time scores 1, shortest scores n; midranks for ties.
    std::vector<int> order(obs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return obs[a].time > obs[b].time; });
    ScoreVector sv;
    sv.method = "wilcoxon";
    sv.scores.resize(obs.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && obs[order[j]].time == obs[order[i]].time) ++j;
        const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) sv.scores[order[k]] = midrank;
        i = j;
    }
    return sv;
}

ScoreVector gehan_scores(const TwoArmDataset& data) {
    const std::vector<Observation>& obs = data.observations();
    std::vector<double> all_times, event_times;
    all_times.reserve(obs.size());
    for (const Observation& o : obs) {
        all_times.push_back(o.time);
        if (o.event) event_times.push_back(o.time);
    }
    std::sort(all_times.begin(), all_times.end());
    std::sort(event_times.begin(), event_times.end());

    // Score = #{subjects known to outlive i} - #{subjects i is known to
    // outlive}. j is known to outlive i only when i's time is an observed
    // event; i is known to outlive j only when j's. Equal times are never a
    // definite ordering, so they contribute nothing either way.
    ScoreVector sv;
    sv.method = "gehan";
    sv.scores.resize(obs.size());
    const auto n = static_cast<std::ptrdiff_t>(obs.size());
    for (std::size_t i = 0; i < obs.size(); ++i) {
        const Observation& o = obs[i];
        const std::ptrdiff_t outlive_me =
            o.event ? n - (std::upper_bound(all_times.begin(), all_times.end(), o.time) -
                           all_times.begin())
                    : 0;
        const std::ptrdiff_t i_outlive =
            std::lower_bound(event_times.begin(), event_times.end(), o.time) -
            event_times.begin();
        sv.scores[i] = static_cast<double>(outlive_me - i_outlive);
    }
    return sv;
}

ScoreVector scores_from_weights(std::span<const double> weights, const EventTable& table,
                                const TwoArmDataset& data) {
    if (weights.size() != table.rows.size()) {
        throw std::invalid_argument("scores_from_weights: one weight per event time required");
    }
    // Prefix sums c_j = sum_{i<=j} w_i d_i / n_i.
    std::vector<double> event_times, cum;
    event_times.reserve(table.rows.size());
    cum.reserve(table.rows.size());
    NeumaierSum c;
    for (std::size_t j = 0; j < table.rows.size(); ++j) {
        const EventTableRow& row = table.rows[j];
        c.add(weights[j] * row.d / row.n);
        event_times.push_back(row.time);
        cum.push_back(c.value());
    }

    ScoreVector sv;
    sv.method = "weighted";
    sv.scores.resize(data.observations().size());
    for (std::size_t i = 0; i < sv.scores.size(); ++i) {
        const Observation& o = data.observations()[i];
        // Row of the last event time <= o.time; censorings before the first
        // event time land in the empty virtual interval and score 0.
        const auto it = std::upper_bound(event_times.begin(), event_times.end(), o.time);
        if (it == event_times.begin()) {
            sv.scores[i] = 0.0;
            continue;
        }
        const std::size_t j = static_cast<std::size_t>(it - event_times.begin()) - 1;
        sv.scores[i] = o.event ? weights[j] - cum[j] : -cum[j];
    }
    return sv;
}

ScoreVector logrank_scores(const TwoArmDataset& data) {
    const EventTable table = build_event_table(data);
    const std::vector<double> ones(table.rows.size(), 1.0);
    ScoreVector sv = scores_from_weights(ones, table, data);
    sv.method = "logrank";
    return sv;
}

namespace {

void check_alignment(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) {
        throw std::invalid_argument("scores and labels differ in length");
    }
    int n0 = 0, n1 = 0;
    for (int z : labels) {
        if (z == 0) ++n0;
        else if (z == 1) ++n1;
        else throw std::invalid_argument("labels must be 0 or 1");
    }
    if (n0 == 0 || n1 == 0) throw std::invalid_argument("both arms must be nonempty");
}

}  // namespace

double score_statistic(std::span<const double> scores, std::span<const int> labels) {
    check_alignment(scores, labels);
    NeumaierSum s0, s1;
    int n0 = 0, n1 = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] == 1) {
            s1.add(scores[i]);
            ++n1;
        } else {
            s0.add(scores[i]);
            ++n0;
        }
    }
    return s1.value() / n1 - s0.value() / n0;
}

double score_statistic(const ScoreVector& scores, const TwoArmDataset& data) {
    const std::vector<int> labels = data.arm_labels();
    return score_statistic(scores.scores, labels);
}

double arm1_score_sum(std::span<const double> scores, std::span<const int> labels) {
    check_alignment(scores, labels);
    NeumaierSum s1;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] == 1) s1.add(scores[i]);
    }
    return s1.value();
}

double arm1_centered_mean(std::span<const double> scores, std::span<const int> labels) {
    check_alignment(scores, labels);
    NeumaierSum total, s1;
    int n1 = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        total.add(scores[i]);
        if (labels[i] == 1) {
            s1.add(scores[i]);
            ++n1;
        }
    }
    const double grand_mean = total.value() / static_cast<double>(scores.size());
    return s1.value() / n1 - grand_mean;
}

void write_scores_csv(std::ostream& os, const ScoreVector& scores, const TwoArmDataset& data) {
    if (scores.scores.size() != data.observations().size()) {
        throw std::invalid_argument("score vector does not match dataset size");
    }
    os << "index,time,event,arm,score\n";
    for (std::size_t i = 0; i < scores.scores.size(); ++i) {
        const Observation& o = data.observations()[i];
        os << i << ',' << format_double(o.time) << ',' << (o.event ? 1 : 0) << ',' << o.arm
           << ',' << format_double(scores.scores[i]) << '\n';
    }
}

}  // namespace survperm

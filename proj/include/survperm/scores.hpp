#pragma once

#include <span>
#include <string>
#include <vector>

#include "survperm/dataset.hpp"

namespace survperm {

/// Per-subject permutation scores, aligned with dataset order. Lower scores
/// correspond to better outcomes, so arm-1 benefit shows up as a negative
/// mean-score difference.
struct ScoreVector {
    std::vector<double> scores;
    std::string method;
};

/// Rank scores for fully observed data: longest time scores 1, shortest
/// scores n; ties get midranks. Throws std::invalid_argument when any
/// observation is censored (use gehan_scores instead).
ScoreVector wilcoxon_scores(const TwoArmDataset& data);

/// #definitely-longer minus #definitely-shorter over all pairwise
/// comparisons; censored observations only ever count as "longer".
ScoreVector gehan_scores(const TwoArmDataset& data);

/// 1 + log S(x) for events, log S(x) for censorings, with S the pooled
/// survival-form Nelson-Aalen estimate.
ScoreVector logrank_scores(const TwoArmDataset& data);

/// Scores equivalent to the weighted observed-minus-expected statistic:
/// an event at event time j scores w_j - sum_{i<=j} w_i d_i/n_i, a censoring
/// in [t_j, t_{j+1}) scores -sum_{i<=j} w_i d_i/n_i, and a censoring before
/// the first event time scores 0.
ScoreVector scores_from_weights(std::span<const double> weights,
                                const EventTable& table,
                                const TwoArmDataset& data);

/// Mean score on arm 1 minus mean score on arm 0.
double score_statistic(std::span<const double> scores, std::span<const int> labels);
double score_statistic(const ScoreVector& scores, const TwoArmDataset& data);

/// Sum of scores on arm 1 (affinely equivalent to the mean difference when
/// arm sizes are fixed, as they are under label permutation).
double arm1_score_sum(std::span<const double> scores, std::span<const int> labels);

/// Arm-1 mean of the centered scores; equals half the mean difference under
/// 1:1 allocation. Reported alongside the mean difference since both appear
/// in common summaries and they share a permutation p-value.
double arm1_centered_mean(std::span<const double> scores, std::span<const int> labels);

/// CSV `index,time,event,arm,score` for score-vs-rank plots.
void write_scores_csv(std::ostream& os, const ScoreVector& scores, const TwoArmDataset& data);

}  // namespace survperm

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "survperm/dataset.hpp"
#include "survperm/scores.hpp"

namespace survperm {

struct PermutationResult {
    double observed = 0.0;        // mean-score difference, arm 1 minus arm 0
    double p = 0.0;               // one-sided: proportion <= observed
    std::uint64_t n_perms = 0;    // assignments enumerated or sampled
    std::string mode;             // "exact" | "monte-carlo"
    std::uint64_t seed = 0;       // meaningful in monte-carlo mode
    std::string rng;              // generator identifier
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Enumerates all C(n, n1) arm assignments (lexicographic in the arm-1 index
/// sets) and reports the proportion with statistic <= observed; the observed
/// assignment itself is part of the enumeration. Throws std::invalid_argument
/// when C(n, n1) exceeds the cap, directing callers to Monte Carlo mode.
/// `distribution`, when given, receives every assignment's statistic.
PermutationResult exact_permutation_test(std::span<const double> scores,
                                         std::span<const int> labels,
                                         std::uint64_t enumeration_cap = kDefaultEnumerationCap,
                                         std::vector<double>* distribution = nullptr);
PermutationResult exact_permutation_test(const ScoreVector& scores,
                                         const TwoArmDataset& data,
                                         std::uint64_t enumeration_cap = kDefaultEnumerationCap,
                                         std::vector<double>* distribution = nullptr);

/// Samples B label assignments uniformly among those preserving the arm
/// sizes and reports the add-one estimate (1 + #{<= observed}) / (B + 1).
/// Fully deterministic given (scores, labels, B, seed) regardless of thread
/// count: draws are made in fixed-size batches with per-batch RNG streams.
PermutationResult monte_carlo_permutation_test(std::span<const double> scores,
                                               std::span<const int> labels,
                                               std::uint64_t B,
                                               std::uint64_t seed,
                                               std::vector<double>* distribution = nullptr);
PermutationResult monte_carlo_permutation_test(const ScoreVector& scores,
                                               const TwoArmDataset& data,
                                               std::uint64_t B,
                                               std::uint64_t seed,
                                               std::vector<double>* distribution = nullptr);

/// Number of assignments C(n, k) if it does not exceed cap, else 0.
std::uint64_t binomial_within_cap(int n, int k, std::uint64_t cap);

}  // namespace survperm

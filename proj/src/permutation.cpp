#include "survperm/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "survperm/parallel.hpp"
#include "survperm/rng.hpp"

namespace survperm {

namespace {

struct ArmSplit {
    int n = 0;
    int n0 = 0;
    int n1 = 0;
    double total_sum = 0.0;
    double observed_sum = 0.0;  // arm-1 sum in ascending index order
};

ArmSplit split_labels(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) {
        throw std::invalid_argument("scores and labels differ in length");
    }
    ArmSplit s;
    s.n = static_cast<int>(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        s.total_sum += scores[i];
        if (labels[i] == 1) {
            ++s.n1;
            s.observed_sum += scores[i];
        } else if (labels[i] == 0) {
            ++s.n0;
        } else {
            throw std::invalid_argument("labels must be 0 or 1");
        }
    }
    if (s.n0 == 0 || s.n1 == 0) throw std::invalid_argument("both arms must be nonempty");
    return s;
}

// Mean-score difference as an affine function of the arm-1 sum; increasing,
// so comparisons can run on sums alone.
double mean_difference(double arm1_sum, const ArmSplit& s) {
    return arm1_sum * (1.0 / s.n1 + 1.0 / s.n0) - s.total_sum / s.n0;
}

double tie_tolerance(double observed_sum) {
    return 1e-9 * (1.0 + std::abs(observed_sum));
}

}  // namespace

std::uint64_t binomial_within_cap(int n, int k, std::uint64_t cap) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 c = 1;
    for (int i = 1; i <= k; ++i) {
        c = c * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (c > cap) return 0;
    }
    return static_cast<std::uint64_t>(c);
}

PermutationResult exact_permutation_test(std::span<const double> scores,
                                         std::span<const int> labels,
                                         std::uint64_t enumeration_cap,
                                         std::vector<double>* distribution) {
    const ArmSplit s = split_labels(scores, labels);
    const std::uint64_t total = binomial_within_cap(s.n, s.n1, enumeration_cap);
    if (total == 0) {
        throw std::invalid_argument(
            "exact enumeration cap exceeded: C(" + std::to_string(s.n) + ", " +
            std::to_string(s.n1) + ") > " + std::to_string(enumeration_cap) +
            "; use Monte Carlo mode");
    }
    const double tol = tie_tolerance(s.observed_sum);
    const double threshold = s.observed_sum + tol;

    if (distribution) {
        distribution->clear();
        distribution->reserve(total);
    }

    // Lexicographic walk over the arm-1 index sets, keeping the subset sum
    // updated incrementally.
    std::vector<int> idx(static_cast<std::size_t>(s.n1));
    std::iota(idx.begin(), idx.end(), 0);
    double sum = 0.0;
    for (int i : idx) sum += scores[static_cast<std::size_t>(i)];

    std::uint64_t count = 0;
    std::uint64_t visited = 0;
    const int n = s.n;
    const int n1 = s.n1;
    for (;;) {
        ++visited;
        if (sum <= threshold) ++count;
        if (distribution) distribution->push_back(mean_difference(sum, s));

        int i = n1 - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - n1 + i) --i;
        if (i < 0) break;
        for (int j = i; j < n1; ++j) sum -= scores[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n1; ++j) {
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
        for (int j = i; j < n1; ++j) sum += scores[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
    }
    if (visited != total) {
        throw std::logic_error("enumeration count mismatch");
    }

    PermutationResult result;
    result.observed = mean_difference(s.observed_sum, s);
    result.p = static_cast<double>(count) / static_cast<double>(total);
    result.n_perms = total;
    result.mode = "exact";
    result.seed = 0;
    result.rng = "none";
    return result;
}

PermutationResult exact_permutation_test(const ScoreVector& scores, const TwoArmDataset& data,
                                         std::uint64_t enumeration_cap,
                                         std::vector<double>* distribution) {
    const std::vector<int> labels = data.arm_labels();
    return exact_permutation_test(scores.scores, labels, enumeration_cap, distribution);
}

PermutationResult monte_carlo_permutation_test(std::span<const double> scores,
                                               std::span<const int> labels, std::uint64_t B,
                                               std::uint64_t seed,
                                               std::vector<double>* distribution) {
    if (B < 1) throw std::invalid_argument("Monte Carlo draw count B must be at least 1");
    const ArmSplit s = split_labels(scores, labels);
    const double tol = tie_tolerance(s.observed_sum);
    const double threshold = s.observed_sum + tol;

    constexpr std::uint64_t batch_size = 65536;
    const std::uint64_t n_batches = (B + batch_size - 1) / batch_size;
    std::vector<std::uint64_t> batch_counts(n_batches, 0);
    if (distribution) distribution->assign(B, 0.0);

    const int n = s.n;
    const int n1 = s.n1;
    parallel_for(n_batches, [&](std::uint64_t b) {
        RngStream rng(seed, b);
        std::vector<int> pool(static_cast<std::size_t>(n));
        std::iota(pool.begin(), pool.end(), 0);
        const std::uint64_t begin = b * batch_size;
        const std::uint64_t end = std::min(B, begin + batch_size);
        std::uint64_t count = 0;
        for (std::uint64_t draw = begin; draw < end; ++draw) {
            // Partial Fisher-Yates: the first n1 pool entries are a uniform
            // subset whatever order earlier draws left the pool in.
            for (int i = 0; i < n1; ++i) {
                const std::uint64_t j =
                    static_cast<std::uint64_t>(i) + rng.below(static_cast<std::uint64_t>(n - i));
                std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
            }
            double sum = 0.0;
            for (int i = 0; i < n1; ++i) sum += scores[static_cast<std::size_t>(pool[static_cast<std::size_t>(i)])];
            if (sum <= threshold) ++count;
            if (distribution) (*distribution)[draw] = mean_difference(sum, s);
        }
        batch_counts[b] = count;
    });

    std::uint64_t count = 0;
    for (std::uint64_t c : batch_counts) count += c;

    PermutationResult result;
    result.observed = mean_difference(s.observed_sum, s);
    result.p = static_cast<double>(1 + count) / static_cast<double>(B + 1);
    result.n_perms = B;
    result.mode = "monte-carlo";
    result.seed = seed;
    result.rng = RngStream::algorithm;
    return result;
}

PermutationResult monte_carlo_permutation_test(const ScoreVector& scores,
                                               const TwoArmDataset& data, std::uint64_t B,
                                               std::uint64_t seed,
                                               std::vector<double>* distribution) {
    const std::vector<int> labels = data.arm_labels();
    return monte_carlo_permutation_test(scores.scores, labels, B, seed, distribution);
}

}  // namespace survperm

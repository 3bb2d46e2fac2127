#pragma once

#include <cmath>
#include <vector>

#include "survperm/dataset.hpp"
#include "survperm/rng.hpp"

namespace test_helpers {

// The 12-subject example dataset used throughout: times 2,6+,7,8,9+,11,13,
// 17,22,23,24+,30 with arms 0/0/1/0/1/0/1/0/1/1/0/1.
inline survperm::TwoArmDataset toy_dataset() {
    std::vector<survperm::Observation> obs = {
        {2, true, 0},  {6, false, 0}, {7, true, 1},  {8, true, 0},
        {9, false, 1}, {11, true, 0}, {13, true, 1}, {17, true, 0},
        {22, true, 1}, {23, true, 1}, {24, false, 0}, {30, true, 1}};
    return survperm::TwoArmDataset::from_observations(std::move(obs));
}

// Same times and arms with the censoring flags dropped (fully observed),
// which is what the Wilcoxon rank example uses.
inline survperm::TwoArmDataset toy_all_events() {
    std::vector<survperm::Observation> obs = {
        {2, true, 0},  {6, true, 0},  {7, true, 1},  {8, true, 0},
        {9, true, 1},  {11, true, 0}, {13, true, 1}, {17, true, 0},
        {22, true, 1}, {23, true, 1}, {24, true, 0}, {30, true, 1}};
    return survperm::TwoArmDataset::from_observations(std::move(obs));
}

// Random two-arm dataset with exponential-ish times and ~30% censoring.
// gridded = true snaps times to a half-month grid so ties are common.
// Both arms are guaranteed nonempty and at least one event exists.
inline survperm::TwoArmDataset random_dataset(survperm::RngStream& rng, int n,
                                              bool gridded = false) {
    std::vector<survperm::Observation> obs(static_cast<std::size_t>(n));
    bool any_event = false;
    for (int i = 0; i < n; ++i) {
        survperm::Observation& o = obs[static_cast<std::size_t>(i)];
        double t = -std::log(rng.uniform()) * 10.0;
        if (gridded) t = std::round(t * 2.0) / 2.0;
        o.time = t;
        o.event = rng.uniform() < 0.7;
        o.arm = static_cast<int>(rng.below(2));
        any_event = any_event || o.event;
    }
    obs.front().arm = 0;
    obs.back().arm = 1;
    if (!any_event) obs[rng.below(static_cast<std::uint64_t>(n))].event = true;
    return survperm::TwoArmDataset::from_observations(std::move(obs));
}

}  // namespace test_helpers

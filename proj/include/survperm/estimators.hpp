#pragma once

#include <span>

#include "survperm/dataset.hpp"
#include "survperm/step_function.hpp"

namespace survperm {

/// Product-limit survival estimate over the given observations (arm labels
/// are ignored, so a pooled curve or a single-arm curve depending on input).
/// Throws std::runtime_error when there is no event.
StepFunction kaplan_meier(std::span<const Observation> obs);
StepFunction kaplan_meier(const TwoArmDataset& data);

/// Pooled Kaplan-Meier from an already-built event table (no re-sort).
StepFunction kaplan_meier(const EventTable& table);

/// Kaplan-Meier for one arm, read off the pooled event table.
StepFunction arm_kaplan_meier(const EventTable& table, int arm);

/// Survival-form Nelson-Aalen: exp(-sum of d_j/n_j over event times <= t).
StepFunction nelson_aalen_survival(std::span<const Observation> obs);
StepFunction nelson_aalen_survival(const TwoArmDataset& data);
StepFunction nelson_aalen_survival(const EventTable& table);

struct MilestoneResult {
    double tau = 0.0;
    double s0_hat = 0.0;
    double s1_hat = 0.0;
    double se = 0.0;
    double z = 0.0;
    double p = 0.0;
};

/// Compares per-arm Kaplan-Meier estimates at tau. The variance of each
/// estimate is Greenwood's formula; the difference is standardized against
/// a normal reference, one-sided for arm-1 superiority (small p favours
/// arm 1). Throws when tau is beyond follow-up on either arm, or when both
/// arms carry zero variance at tau.
MilestoneResult milestone_test(const TwoArmDataset& data, double tau);
MilestoneResult milestone_test(const EventTable& table, double max_time0, double max_time1, double tau);

}  // namespace survperm

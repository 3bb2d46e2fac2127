#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "survperm/dataset.hpp"
#include "survperm/methods.hpp"
#include "survperm/rng.hpp"

namespace survperm {

/// Piecewise-constant hazard. Segment k covers [changepoints[k-1], changepoints[k])
/// with hazard rates[k]; the final rate extends to infinity. Requires
/// rates.size() == changepoints.size() + 1, strictly increasing positive
/// changepoints and positive finite rates.
class PiecewiseExponential {
  public:
    PiecewiseExponential(std::vector<double> changepoints, std::vector<double> rates);
    explicit PiecewiseExponential(double rate);

    double cumulative_hazard(double t) const;
    double survival(double t) const;
    /// Inverse-CDF draw from a uniform u in (0, 1).
    double sample(double u) const;

    const std::vector<double>& changepoints() const { return changepoints_; }
    const std::vector<double>& rates() const { return rates_; }

  private:
    std::vector<double> changepoints_;
    std::vector<double> rates_;
    std::vector<double> cum_;  // cumulative hazard at each changepoint
};

struct TrialDesign {
    int n_per_arm = 500;
    double accrual_duration = 12.0;
    double cutoff = 36.0;           // analysis time from start of accrual
    bool deterministic_entry = false;  // entry grid (i + 0.5)/n * accrual instead of uniform draws
};

struct Scenario {
    std::string name;
    PiecewiseExponential control;
    PiecewiseExponential experimental;
};

/// The five built-in scenarios "A".."E". Throws std::invalid_argument otherwise.
Scenario scenario_by_name(const std::string& name);

/// One simulated trial: control subjects first (arm 0), then experimental
/// (arm 1); per subject an entry time then a latent survival time. Observed
/// time is min(latent, cutoff - entry), event iff latent fits before cutoff.
TwoArmDataset simulate_trial(const TrialDesign& design, const Scenario& scenario, RngStream& rng);

struct PowerEntry {
    std::string test;      // method label
    double rate = 0.0;     // rejection proportion
    double se = 0.0;       // binomial standard error sqrt(r(1-r)/reps)
    std::uint64_t errors = 0;  // replicates where the test failed to evaluate
};

struct PowerResult {
    std::string scenario;
    std::uint64_t reps = 0;
    std::uint64_t seed = 0;
    double alpha = 0.0;
    std::vector<PowerEntry> tests;
};

/// Rejection rates for each method over `reps` simulated trials. Replicate r
/// uses RngStream(seed, r), so results are independent of thread count;
/// threads = 0 picks hardware concurrency. A replicate where a method throws
/// counts as a non-rejection and increments that method's error tally.
PowerResult power_study(const TrialDesign& design, const Scenario& scenario,
                        const std::vector<AnalysisMethod>& methods,
                        std::uint64_t reps, double alpha, std::uint64_t seed,
                        unsigned threads = 0);

}  // namespace survperm

#pragma once

namespace survperm {

struct DesignInputs {
    double mu0 = 0.0;    // control median survival
    double mu1 = 0.0;    // experimental median survival
    double alpha = 0.025;  // one-sided
    double power = 0.0;
};

/// Schoenfeld-style required event count for a 1:1 exponential trial,
///   n_e = 4 ((z_power + z_{1-alpha}) / log HR)^2,
/// with HR = mu0 / mu1. Throws std::invalid_argument when the medians are
/// equal (zero effect) or any input is out of range.
double required_events(const DesignInputs& in);

/// Hazard ratio at the rejection boundary for n_e events:
///   exp(Phi^{-1}(alpha) * sqrt(4 / n_e)).
double minimal_detectable_hr(double n_events, double alpha);

/// Percent events needed for power `a` relative to power `b` at the same
/// alternative: 100 ((z_{1-alpha} + z_a) / (z_{1-alpha} + z_b))^2.
double relative_efficiency(double power_a, double power_b, double alpha);

}  // namespace survperm

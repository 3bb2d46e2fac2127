#pragma once

#include <ostream>
#include <vector>

namespace survperm {

/// Right-continuous piecewise-constant function starting at 1 before the
/// first jump. Used for survival estimates, so values are nonincreasing.
class StepFunction {
public:
    StepFunction() = default;
    StepFunction(std::vector<double> jump_times, std::vector<double> values);

    /// Value at t (right-continuous).
    double operator()(double t) const;
    /// Left limit: value just before t.
    double left_limit(double t) const;

    const std::vector<double>& jump_times() const { return times_; }
    const std::vector<double>& values() const { return values_; }

    /// Two-column CSV (time,value) with a leading (0,1) anchor row.
    void write_csv(std::ostream& os) const;

private:
    std::vector<double> times_;
    std::vector<double> values_;
};

}  // namespace survperm

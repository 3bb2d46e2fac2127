#pragma once

#include <cmath>

namespace survperm {

/// Neumaier compensated summation. Accumulation order still matters for
/// bit-reproducibility, but rounding error stays O(eps) instead of O(n*eps).
class NeumaierSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile for p in (0,1), accurate to ~1e-15
/// (rational approximation polished with one Halley step).
double normal_quantile(double p);

}  // namespace survperm

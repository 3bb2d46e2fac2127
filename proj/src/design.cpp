#include "survperm/design.hpp"

#include <cmath>
#include <stdexcept>

#include "survperm/numeric.hpp"

namespace survperm {

double required_events(const DesignInputs& in) {
    if (in.mu0 == in.mu1) {
        throw std::invalid_argument("zero effect: control and experimental medians are equal");
    }
    if (!(in.mu0 > 0.0) || !(in.mu1 > 0.0) || !std::isfinite(in.mu0) || !std::isfinite(in.mu1)) {
        throw std::invalid_argument("medians must be positive and finite");
    }
    if (!(in.alpha > 0.0 && in.alpha < 0.5)) {
        throw std::invalid_argument("one-sided alpha must lie strictly between 0 and 0.5");
    }
    if (!(in.power > 0.5 && in.power < 1.0)) {
        throw std::invalid_argument("power must lie strictly between 0.5 and 1");
    }
    const double log_hr = std::log(in.mu0 / in.mu1);
    const double z = normal_quantile(in.power) + normal_quantile(1.0 - in.alpha);
    return 4.0 * (z / log_hr) * (z / log_hr);
}

double minimal_detectable_hr(double n_events, double alpha) {
    if (!(n_events > 0.0) || !std::isfinite(n_events)) {
        throw std::invalid_argument("event count must be positive and finite");
    }
    if (!(alpha > 0.0 && alpha < 0.5)) {
        throw std::invalid_argument("one-sided alpha must lie strictly between 0 and 0.5");
    }
    return std::exp(normal_quantile(alpha) * std::sqrt(4.0 / n_events));
}

double relative_efficiency(double power_a, double power_b, double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) {
        throw std::invalid_argument("one-sided alpha must lie strictly between 0 and 0.5");
    }
    if (!(power_a > alpha && power_a < 1.0) || !(power_b > alpha && power_b < 1.0)) {
        throw std::invalid_argument("powers must lie strictly between alpha and 1");
    }
    const double z_alpha = normal_quantile(1.0 - alpha);
    const double num = z_alpha + normal_quantile(power_a);
    const double den = z_alpha + normal_quantile(power_b);
    return 100.0 * (num / den) * (num / den);
}

}  // namespace survperm

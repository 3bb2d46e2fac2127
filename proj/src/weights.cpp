#include "survperm/weights.hpp"

#include <cmath>
#include <stdexcept>

#include "survperm/serialize.hpp"

namespace survperm {

WeightSpec WeightSpec::log_rank() {
    return WeightSpec{};
}

WeightSpec WeightSpec::fleming_harrington(double rho, double gamma) {
    if (!(rho >= 0.0) || !(gamma >= 0.0) || !std::isfinite(rho) || !std::isfinite(gamma)) {
        throw std::invalid_argument("fleming-harrington parameters must be finite and nonnegative");
    }
    WeightSpec spec;
    spec.kind = Kind::FlemingHarrington;
    spec.rho = rho;
    spec.gamma = gamma;
    return spec;
}

WeightSpec WeightSpec::modest(double t_star) {
    if (!(t_star > 0.0)) {
        throw std::invalid_argument("modest weight horizon t* must be positive (inf allowed)");
    }
    WeightSpec spec;
    spec.kind = Kind::Modest;
    spec.t_star = t_star;
    return spec;
}

WeightSpec WeightSpec::custom(std::vector<double> weights) {
    for (double w : weights) {
        if (!std::isfinite(w)) throw std::invalid_argument("custom weights must be finite");
    }
    WeightSpec spec;
    spec.kind = Kind::Custom;
    spec.custom_weights = std::move(weights);
    return spec;
}

std::string WeightSpec::label() const {
    switch (kind) {
        case Kind::LogRank:
            return "logrank";
        case Kind::FlemingHarrington:
            return "fh:" + format_double(rho) + "," + format_double(gamma);
        case Kind::Modest:
            return "mwlrt:" + format_double(t_star);
        case Kind::Custom:
            return "custom";
    }
    return "unknown";
}

std::vector<double> compute_weights(const WeightSpec& spec, const EventTable& table,
                                    const StepFunction& pooled_km) {
    const std::size_t m = table.rows.size();
    std::vector<double> w(m, 1.0);
    switch (spec.kind) {
        case WeightSpec::Kind::LogRank:
            break;
        case WeightSpec::Kind::FlemingHarrington:
            for (std::size_t j = 0; j < m; ++j) {
                const double s = pooled_km.left_limit(table.rows[j].time);
                // pow(0,0) = 1, so rho = gamma = 0 reduces to the log-rank weights
                w[j] = std::pow(s, spec.rho) * std::pow(1.0 - s, spec.gamma);
            }
            break;
        case WeightSpec::Kind::Modest: {
            const double floor_value =
                std::isinf(spec.t_star) ? 0.0 : pooled_km(spec.t_star);
            for (std::size_t j = 0; j < m; ++j) {
                const double s = pooled_km.left_limit(table.rows[j].time);
                w[j] = 1.0 / std::max(s, floor_value);
            }
            break;
        }
        case WeightSpec::Kind::Custom:
            if (spec.custom_weights.size() != m) {
                throw std::invalid_argument(
                    "custom weights: expected " + std::to_string(m) + " entries, got " +
                    std::to_string(spec.custom_weights.size()));
            }
            w = spec.custom_weights;
            break;
    }
    return w;
}

}  // namespace survperm

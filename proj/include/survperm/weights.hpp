#pragma once

#include <limits>
#include <string>
#include <vector>

#include "survperm/dataset.hpp"
#include "survperm/step_function.hpp"

namespace survperm {

/// Declarative choice of the per-event-time weight function.
struct WeightSpec {
    enum class Kind { LogRank, FlemingHarrington, Modest, Custom };

    Kind kind = Kind::LogRank;
    double rho = 0.0;
    double gamma = 0.0;
    double t_star = std::numeric_limits<double>::infinity();
    std::vector<double> custom_weights;

    static WeightSpec log_rank();
    /// Fleming-Harrington-(rho,gamma): S(t-)^rho * (1-S(t-))^gamma.
    static WeightSpec fleming_harrington(double rho, double gamma);
    /// Modest weights 1/max{S(t-), S(t_star)}. t_star may be infinite,
    /// in which case the weights reduce to 1/S(t-).
    static WeightSpec modest(double t_star);
    static WeightSpec custom(std::vector<double> weights);

    std::string label() const;
};

/// One weight per event-table row. pooled_km must come from the same data
/// as the table; its left limits drive the FH and modest families.
std::vector<double> compute_weights(const WeightSpec& spec,
                                    const EventTable& table,
                                    const StepFunction& pooled_km);

}  // namespace survperm

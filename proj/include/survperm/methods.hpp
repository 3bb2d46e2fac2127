#pragma once

#include <string>
#include <string_view>

#include "survperm/weights.hpp"

namespace survperm {

/// A named analysis applicable to a two-arm dataset. Parsed from the CLI
/// grammar: "logrank", "fh:RHO,GAMMA", "mwlrt:TSTAR" (TSTAR may be "inf"),
/// "milestone:TAU", "gehan", "wilcoxon".
struct AnalysisMethod {
    enum class Kind { Wlrt, Milestone, Gehan, Wilcoxon };

    Kind kind = Kind::Wlrt;
    WeightSpec weights = WeightSpec::log_rank();  // meaningful for Wlrt
    double tau = 0.0;                             // meaningful for Milestone

    std::string label() const;

    /// Throws std::invalid_argument with a grammar reminder on bad input.
    static AnalysisMethod parse(std::string_view text);
};

}  // namespace survperm

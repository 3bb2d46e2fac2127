#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "survperm/estimators.hpp"
#include "survperm/permutation.hpp"
#include "survperm/simulation.hpp"
#include "survperm/wlrt.hpp"

namespace survperm {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const TestResult& r);
ordered_json to_json(const MilestoneResult& r);
ordered_json to_json(const PermutationResult& r);
ordered_json to_json(const HazardRatioSummary& s);
ordered_json to_json(const PowerResult& r);

/// Shortest decimal round-trip representation of a double ("%.17g" fallback
/// when fewer digits do not recover the value). Used everywhere a double is
/// written to CSV so files are byte-reproducible.
std::string format_double(double x);

/// One row per scenario, one column per test label. Labels containing commas
/// or quotes are quoted per RFC 4180.
void write_power_csv(std::ostream& os, const std::vector<PowerResult>& results);

std::string csv_quote(const std::string& field);

}  // namespace survperm

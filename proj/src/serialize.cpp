#include "survperm/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

namespace survperm {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

ordered_json to_json(const TestResult& r) {
    return ordered_json{{"statistic", r.statistic},
                        {"variance", r.variance},
                        {"z", r.z},
                        {"p", r.p},
                        {"method", r.method}};
}

ordered_json to_json(const MilestoneResult& r) {
    return ordered_json{{"tau", r.tau},   {"s0_hat", r.s0_hat}, {"s1_hat", r.s1_hat},
                        {"se", r.se},     {"z", r.z},           {"p", r.p}};
}

ordered_json to_json(const PermutationResult& r) {
    return ordered_json{{"observed", r.observed}, {"p", r.p},       {"n_perms", r.n_perms},
                        {"mode", r.mode},         {"seed", r.seed}, {"rng", r.rng}};
}

ordered_json to_json(const HazardRatioSummary& s) {
    ordered_json j{{"theta_hat", s.theta_hat},
                   {"log_hr", s.log_hr},
                   {"ci_low", s.ci_low},
                   {"ci_high", s.ci_high}};
    if (!s.intervals.empty()) {
        ordered_json intervals = ordered_json::array();
        for (const IntervalEstimate& est : s.intervals) {
            intervals.push_back(ordered_json{{"lower", est.lower},
                                             {"upper", est.upper},
                                             {"theta", est.theta},
                                             {"information", est.information},
                                             {"events", est.events},
                                             {"degenerate", est.degenerate}});
        }
        j["intervals"] = std::move(intervals);
    }
    return j;
}

ordered_json to_json(const PowerResult& r) {
    ordered_json tests = ordered_json::array();
    for (const PowerEntry& e : r.tests) {
        tests.push_back(ordered_json{
            {"test", e.test}, {"rate", e.rate}, {"se", e.se}, {"errors", e.errors}});
    }
    return ordered_json{{"scenario", r.scenario},
                        {"reps", r.reps},
                        {"seed", r.seed},
                        {"alpha", r.alpha},
                        {"tests", std::move(tests)}};
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void write_power_csv(std::ostream& os, const std::vector<PowerResult>& results) {
    if (results.empty()) throw std::invalid_argument("no power results to write");
    os << "scenario";
    for (const PowerEntry& e : results.front().tests) os << ',' << csv_quote(e.test);
    os << '\n';
    for (const PowerResult& r : results) {
        if (r.tests.size() != results.front().tests.size()) {
            throw std::invalid_argument("power results carry different test lists");
        }
        os << csv_quote(r.scenario);
        for (std::size_t i = 0; i < r.tests.size(); ++i) {
            if (r.tests[i].test != results.front().tests[i].test) {
                throw std::invalid_argument("power results carry different test lists");
            }
            os << ',' << format_double(r.tests[i].rate);
        }
        os << '\n';
    }
}

}  // namespace survperm

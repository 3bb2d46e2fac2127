// Command-line front end: weighted log-rank and permutation tests, score
// export, trial simulation, and design calculations on two-arm survival data.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "survperm/design.hpp"
#include "survperm/estimators.hpp"
#include "survperm/methods.hpp"
#include "survperm/permutation.hpp"
#include "survperm/scores.hpp"
#include "survperm/serialize.hpp"
#include "survperm/simulation.hpp"
#include "survperm/wlrt.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitFileNotFound = 3;
constexpr int kExitParse = 4;
constexpr int kExitDomain = 5;
constexpr int kExitInternal = 6;

int fail(int code, const std::string& message) {
    survperm::ordered_json err;
    err["error"] = survperm::ordered_json{{"code", code}, {"message", message}};
    std::cerr << err.dump() << '\n';
    return code;
}

int require_file(const std::string& path) {
    if (!std::filesystem::exists(path)) {
        return fail(kExitFileNotFound, "file not found: " + path);
    }
    return kExitOk;
}

// Maps library exceptions onto the documented exit codes.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const survperm::parse_error& e) {
        return fail(kExitParse, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(kExitDomain, e.what());
    } catch (const std::domain_error& e) {
        return fail(kExitDomain, e.what());
    } catch (const std::runtime_error& e) {
        return fail(kExitDomain, e.what());
    } catch (const std::exception& e) {
        return fail(kExitInternal, e.what());
    }
}

struct TestOptions {
    std::string dataset;
    std::string method = "logrank";
    std::string inference = "auto";
    std::uint64_t B = 100000;
    std::uint64_t seed = 12345;
    std::uint64_t cap = survperm::kDefaultEnumerationCap;
    bool hazard_ratio = false;
    std::vector<double> cutpoints;
    double level = 0.95;
    std::string perm_out;
};

struct ScoresOptions {
    std::string dataset;
    std::string method;
    std::string out;
};

struct SimulateOptions {
    std::string config;
    std::string out;
    std::uint64_t reps = 0;   // 0 = take from config
    std::int64_t seed = -1;   // <0 = take from config
    double alpha = 0.0;       // 0 = take from config
};

struct DesignOptions {
    double mu0 = 0.0;
    double mu1 = 0.0;
    double alpha = 0.025;
    double power = 0.9;
};

survperm::ScoreVector scores_for_method(const survperm::AnalysisMethod& method,
                                        const survperm::TwoArmDataset& data) {
    using Kind = survperm::AnalysisMethod::Kind;
    switch (method.kind) {
        case Kind::Gehan:
            return survperm::gehan_scores(data);
        case Kind::Wilcoxon:
            return survperm::wilcoxon_scores(data);
        case Kind::Wlrt: {
            const survperm::EventTable table = survperm::build_event_table(data);
            const survperm::StepFunction km = survperm::kaplan_meier(table);
            const std::vector<double> w = survperm::compute_weights(method.weights, table, km);
            survperm::ScoreVector sv = survperm::scores_from_weights(w, table, data);
            sv.method = method.label();
            return sv;
        }
        case Kind::Milestone:
            break;
    }
    throw std::invalid_argument("milestone has no per-subject scores");
}

void write_distribution_csv(const std::string& path, const std::vector<double>& distribution) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << "statistic\n";
    for (double v : distribution) out << survperm::format_double(v) << '\n';
}

int run_test(const TestOptions& opt) {
    if (int rc = require_file(opt.dataset); rc != kExitOk) return rc;

    survperm::AnalysisMethod method;
    try {
        method = survperm::AnalysisMethod::parse(opt.method);
    } catch (const std::invalid_argument& e) {
        return fail(kExitUsage, e.what());
    }

    using Kind = survperm::AnalysisMethod::Kind;
    std::string inference = opt.inference;
    if (method.kind == Kind::Milestone && inference != "auto" && inference != "asymptotic") {
        return fail(kExitUsage, "milestone supports asymptotic inference only");
    }
    if ((method.kind == Kind::Gehan || method.kind == Kind::Wilcoxon) &&
        inference == "asymptotic") {
        return fail(kExitUsage,
                    "score methods use permutation inference; choose exact, mc, or auto");
    }
    // auto means asymptotic for the weighted family, so --perm-out would be
    // silently ignored there; reject it up front.
    const bool resolves_asymptotic =
        inference == "asymptotic" || (inference == "auto" && method.kind == Kind::Wlrt);
    if (!opt.perm_out.empty() && (resolves_asymptotic || method.kind == Kind::Milestone)) {
        return fail(kExitUsage, "--perm-out requires permutation inference (exact or mc)");
    }

    return guarded([&] {
        const survperm::TwoArmDataset data = survperm::load_dataset(opt.dataset);
        survperm::ordered_json payload;

        if (method.kind == Kind::Milestone) {
            payload = survperm::to_json(survperm::milestone_test(data, method.tau));
        } else {
            if (inference == "auto") {
                if (method.kind == Kind::Wlrt) {
                    inference = "asymptotic";
                } else {
                    const std::uint64_t total =
                        survperm::binomial_within_cap(data.size(), data.n1(), opt.cap);
                    inference = total > 0 ? "exact" : "mc";
                }
            }
            if (inference == "asymptotic") {
                payload = survperm::to_json(survperm::wlrt(data, method.weights));
            } else {
                const survperm::ScoreVector sv = scores_for_method(method, data);
                std::vector<double> distribution;
                std::vector<double>* dist_ptr = opt.perm_out.empty() ? nullptr : &distribution;
                survperm::PermutationResult r =
                    inference == "exact"
                        ? survperm::exact_permutation_test(sv, data, opt.cap, dist_ptr)
                        : survperm::monte_carlo_permutation_test(sv, data, opt.B, opt.seed,
                                                                 dist_ptr);
                payload = survperm::to_json(r);
                payload["method"] = sv.method;
                if (dist_ptr) write_distribution_csv(opt.perm_out, distribution);
            }
        }

        if (opt.hazard_ratio) {
            survperm::HazardRatioSummary hr =
                opt.cutpoints.empty()
                    ? survperm::peto_hazard_ratio(data, opt.level)
                    : survperm::interval_decomposition(data, opt.cutpoints, opt.level);
            for (const survperm::IntervalEstimate& est : hr.intervals) {
                if (est.degenerate) {
                    std::cerr << "warning: interval (" << survperm::format_double(est.lower)
                              << ", " << survperm::format_double(est.upper)
                              << "] has zero information and is excluded\n";
                }
            }
            payload["hazard_ratio"] = survperm::to_json(hr);
        }

        std::cout << payload.dump(2) << '\n';
        return kExitOk;
    });
}

int run_scores(const ScoresOptions& opt) {
    if (int rc = require_file(opt.dataset); rc != kExitOk) return rc;

    survperm::AnalysisMethod method;
    try {
        method = survperm::AnalysisMethod::parse(opt.method);
    } catch (const std::invalid_argument& e) {
        return fail(kExitUsage, e.what());
    }
    if (method.kind == survperm::AnalysisMethod::Kind::Milestone) {
        return fail(kExitUsage, "milestone has no per-subject scores");
    }

    return guarded([&] {
        const survperm::TwoArmDataset data = survperm::load_dataset(opt.dataset);
        const survperm::ScoreVector sv = scores_for_method(method, data);
        if (opt.out.empty()) {
            survperm::write_scores_csv(std::cout, sv, data);
        } else {
            std::ofstream out(opt.out);
            if (!out) throw std::runtime_error("cannot open output file: " + opt.out);
            survperm::write_scores_csv(out, sv, data);
        }
        return kExitOk;
    });
}

survperm::PiecewiseExponential parse_hazard(const survperm::ordered_json& j,
                                            const std::string& what) {
    if (!j.is_object() || !j.contains("rates")) {
        throw survperm::parse_error("config: " + what + " needs 'rates' (and 'changepoints')");
    }
    std::vector<double> changepoints, rates;
    if (j.contains("changepoints")) {
        changepoints = j.at("changepoints").get<std::vector<double>>();
    }
    rates = j.at("rates").get<std::vector<double>>();
    return survperm::PiecewiseExponential(std::move(changepoints), std::move(rates));
}

int run_simulate(const SimulateOptions& opt) {
    if (int rc = require_file(opt.config); rc != kExitOk) return rc;

    return guarded([&] {
        std::ifstream in(opt.config);
        survperm::ordered_json config;
        try {
            config = survperm::ordered_json::parse(in);
        } catch (const std::exception& e) {
            throw survperm::parse_error(opt.config + ": " + e.what());
        }

        survperm::TrialDesign design;
        std::vector<survperm::Scenario> scenarios;
        std::vector<survperm::AnalysisMethod> methods;
        std::uint64_t reps = 1000;
        std::uint64_t seed = 1;
        double alpha = 0.025;
        try {
            const auto& d = config.at("design");
            design.n_per_arm = d.at("n_per_arm").get<int>();
            design.accrual_duration = d.at("accrual_duration").get<double>();
            design.cutoff = d.at("cutoff").get<double>();
            design.deterministic_entry = d.value("deterministic_entry", false);

            for (const auto& s : config.at("scenarios")) {
                if (s.is_string()) {
                    scenarios.push_back(survperm::scenario_by_name(s.get<std::string>()));
                } else {
                    scenarios.push_back(survperm::Scenario{
                        s.at("name").get<std::string>(),
                        parse_hazard(s.at("control"), "scenario control"),
                        parse_hazard(s.at("experimental"), "scenario experimental")});
                }
            }
            for (const auto& t : config.at("tests")) {
                methods.push_back(survperm::AnalysisMethod::parse(t.get<std::string>()));
            }
            reps = config.value("reps", reps);
            seed = config.value("seed", seed);
            alpha = config.value("alpha", alpha);
        } catch (const survperm::parse_error&) {
            throw;
        } catch (const std::exception& e) {
            throw survperm::parse_error(opt.config + ": " + e.what());
        }
        if (opt.reps > 0) reps = opt.reps;
        if (opt.seed >= 0) seed = static_cast<std::uint64_t>(opt.seed);
        if (opt.alpha > 0.0) alpha = opt.alpha;

        std::vector<survperm::PowerResult> results;
        results.reserve(scenarios.size());
        for (const survperm::Scenario& scenario : scenarios) {
            results.push_back(
                survperm::power_study(design, scenario, methods, reps, alpha, seed));
        }

        survperm::ordered_json payload = survperm::ordered_json::array();
        for (const survperm::PowerResult& r : results) payload.push_back(survperm::to_json(r));
        std::cout << payload.dump(2) << '\n';

        if (!opt.out.empty()) {
            std::ofstream out(opt.out);
            if (!out) throw std::runtime_error("cannot open output file: " + opt.out);
            survperm::write_power_csv(out, results);
        }
        return kExitOk;
    });
}

int run_design(const DesignOptions& opt) {
    return guarded([&] {
        survperm::DesignInputs in{opt.mu0, opt.mu1, opt.alpha, opt.power};
        const double n_events = survperm::required_events(in);
        const double hr_star = survperm::minimal_detectable_hr(n_events, opt.alpha);
        survperm::ordered_json payload{{"mu0", in.mu0},
                                       {"mu1", in.mu1},
                                       {"alpha", in.alpha},
                                       {"power", in.power},
                                       {"hazard_ratio", in.mu0 / in.mu1},
                                       {"n_events", n_events},
                                       {"minimal_detectable_hr", hr_star}};
        std::cout << payload.dump(2) << '\n';
        return kExitOk;
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-arm survival analysis: weighted log-rank tests, permutation "
                 "inference, trial simulation, and design calculations"};
    app.require_subcommand(1);
    app.footer("Exit codes: 0 success, 2 usage error, 3 file not found, 4 parse error,\n"
               "5 domain/precondition error, 6 internal error.\n"
               "Errors are reported on stderr as JSON: {\"error\":{\"code\",\"message\"}}.");

    TestOptions test_opt;
    CLI::App* test = app.add_subcommand("test", "Run a two-sample test on a dataset CSV");
    test->add_option("dataset", test_opt.dataset, "CSV with columns time,event,arm")->required();
    test->add_option("--method", test_opt.method,
                     "logrank | fh:RHO,GAMMA | mwlrt:TSTAR | milestone:TAU | gehan | wilcoxon")
        ->capture_default_str();
    test->add_option("--inference", test_opt.inference,
                     "auto | asymptotic | exact | mc (auto: asymptotic for weighted "
                     "log-rank, exact-or-mc by enumeration cap for score methods)")
        ->check(CLI::IsMember({"auto", "asymptotic", "exact", "mc"}))
        ->capture_default_str();
    test->add_option("--B", test_opt.B, "Monte Carlo permutation draws")->capture_default_str();
    test->add_option("--seed", test_opt.seed, "Monte Carlo seed")->capture_default_str();
    test->add_option("--cap", test_opt.cap, "exact enumeration cap")->capture_default_str();
    test->add_flag("--hazard-ratio", test_opt.hazard_ratio,
                   "include the hazard-ratio summary in the output");
    test->add_option("--cutpoints", test_opt.cutpoints,
                     "interval cutpoints for the hazard-ratio decomposition (comma separated)")
        ->delimiter(',');
    test->add_option("--level", test_opt.level, "hazard-ratio confidence level")
        ->capture_default_str();
    test->add_option("--perm-out", test_opt.perm_out,
                     "write the full permutation distribution to this CSV");

    ScoresOptions scores_opt;
    CLI::App* scores = app.add_subcommand("scores", "Write per-subject permutation scores as CSV");
    scores->add_option("dataset", scores_opt.dataset, "CSV with columns time,event,arm")
        ->required();
    scores->add_option("--method", scores_opt.method,
                       "logrank | fh:RHO,GAMMA | mwlrt:TSTAR | gehan | wilcoxon")
        ->required();
    scores->add_option("--out", scores_opt.out, "output CSV path (default: stdout)");

    SimulateOptions sim_opt;
    CLI::App* simulate = app.add_subcommand("simulate", "Estimate power over simulated trials");
    simulate->add_option("config", sim_opt.config, "JSON config (see README)")->required();
    simulate->add_option("--reps", sim_opt.reps, "override replicate count");
    simulate->add_option("--seed", sim_opt.seed, "override RNG seed");
    simulate->add_option("--alpha", sim_opt.alpha, "override one-sided level");
    simulate->add_option("--out", sim_opt.out, "write the scenario-by-test power CSV here");

    DesignOptions design_opt;
    CLI::App* design = app.add_subcommand("design", "Closed-form design quantities");
    design->add_option("--mu0", design_opt.mu0, "control median survival (months)")->required();
    design->add_option("--mu1", design_opt.mu1, "experimental median survival (months)")
        ->required();
    design->add_option("--alpha", design_opt.alpha, "one-sided level")->capture_default_str();
    design->add_option("--power", design_opt.power, "target power")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        fail(kExitUsage, e.what());
        std::cerr << "run with --help for usage\n";
        return kExitUsage;
    }

    if (test->parsed()) return run_test(test_opt);
    if (scores->parsed()) return run_scores(scores_opt);
    if (simulate->parsed()) return run_simulate(sim_opt);
    if (design->parsed()) return run_design(design_opt);
    return fail(kExitUsage, "no subcommand given");
}

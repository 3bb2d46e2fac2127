#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "survperm/methods.hpp"
#include "survperm/rng.hpp"
#include "survperm/simulation.hpp"

using namespace survperm;

namespace {

const double kLn2 = std::log(2.0);

}  // namespace

TEST_CASE("piecewise exponential quantiles and survival") {
    const PiecewiseExponential expo(kLn2 / 15.0);
    CHECK(expo.survival(0.0) == 1.0);
    CHECK(expo.survival(15.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(expo.sample(std::exp(-5.0 * kLn2 / 15.0)) == doctest::Approx(5.0).epsilon(1e-12));

    // Scenario-A experimental curve: hazard drops at month 6.
    const PiecewiseExponential late({6.0}, {kLn2 / 15.0, kLn2 / 21.0});
    const double u9 = std::exp(-(6.0 * kLn2 / 15.0 + 3.0 * kLn2 / 21.0));
    CHECK(late.sample(u9) == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(late.cumulative_hazard(6.0) == doctest::Approx(6.0 * kLn2 / 15.0).epsilon(1e-12));
    CHECK(late.cumulative_hazard(9.0) == doctest::Approx(-std::log(u9)).epsilon(1e-12));

    // sample and survival invert each other, and sample is decreasing in u.
    for (double u : {0.9, 0.6, 0.31, 0.05, 0.004}) {
        CHECK(late.survival(late.sample(u)) == doctest::Approx(u).epsilon(1e-12));
    }
    CHECK(late.sample(0.9) < late.sample(0.5));
    CHECK(late.sample(0.5) < late.sample(0.1));

    CHECK_THROWS_AS(late.sample(0.0), std::invalid_argument);
    CHECK_THROWS_AS(late.sample(1.0), std::invalid_argument);
}

TEST_CASE("piecewise exponential validation") {
    CHECK_THROWS_AS(PiecewiseExponential({1.0}, {0.1}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewiseExponential({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewiseExponential({-2.0}, {0.1, 0.2}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewiseExponential({3.0, 3.0}, {0.1, 0.2, 0.3}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewiseExponential({3.0}, {0.1, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewiseExponential(-0.5), std::invalid_argument);
}

TEST_CASE("built-in scenarios") {
    const Scenario a = scenario_by_name("A");
    CHECK(a.name == "A");
    CHECK(a.control.changepoints().empty());
    CHECK(a.control.rates() == std::vector<double>{kLn2 / 15.0});
    CHECK(a.experimental.changepoints() == std::vector<double>{6.0});
    CHECK(a.experimental.rates() == std::vector<double>{kLn2 / 15.0, kLn2 / 21.0});

    const Scenario e = scenario_by_name("E");
    CHECK(e.experimental.changepoints() == std::vector<double>{9.0, 18.0});
    CHECK(e.experimental.rates() ==
          std::vector<double>{kLn2 / 25.0, kLn2 / 18.0, kLn2 / 13.0});

    const Scenario b = scenario_by_name("B");
    CHECK(b.control.rates() == b.experimental.rates());

    CHECK_THROWS_WITH_AS(scenario_by_name("F"), doctest::Contains("unknown scenario"),
                         std::invalid_argument);
}

TEST_CASE("sampled latent times match the analytic survival curves") {
    const int n = 50000;
    int stream = 0;
    for (const char* name : {"A", "B", "C", "D", "E"}) {
        const Scenario sc = scenario_by_name(name);
        for (int arm = 0; arm <= 1; ++arm) {
            const PiecewiseExponential& dist = arm == 0 ? sc.control : sc.experimental;
            RngStream rng(400, std::uint64_t(stream++));
            int beyond = 0;
            for (int i = 0; i < n; ++i) {
                if (dist.sample(rng.uniform()) > 15.0) ++beyond;
            }
            const double s = dist.survival(15.0);
            const double band = 4.0 * std::sqrt(s * (1.0 - s) / n);
            CAPTURE(name);
            CAPTURE(arm);
            CHECK(std::abs(double(beyond) / n - s) <= band);
        }
    }
}

TEST_CASE("a large exponential sample halves by the median") {
    const PiecewiseExponential expo(kLn2 / 15.0);
    RngStream rng(17, 0);
    const int n = 1000000;
    int beyond = 0;
    for (int i = 0; i < n; ++i) {
        if (expo.sample(rng.uniform()) > 15.0) ++beyond;
    }
    CHECK(std::abs(double(beyond) / n - 0.5) < 0.002);
}

TEST_CASE("simulated trials have the promised layout") {
    const Scenario sc = scenario_by_name("A");
    TrialDesign design;
    design.n_per_arm = 40;
    design.accrual_duration = 12.0;
    design.cutoff = 36.0;

    RngStream rng(5, 3);
    const TwoArmDataset data = simulate_trial(design, sc, rng);
    REQUIRE(data.size() == 80);
    CHECK(data.n0() == 40);
    CHECK(data.n1() == 40);
    const std::vector<Observation>& obs = data.observations();
    for (int i = 0; i < 80; ++i) {
        CHECK(obs[std::size_t(i)].arm == (i < 40 ? 0 : 1));
        CHECK(obs[std::size_t(i)].time >= 0.0);
        CHECK(obs[std::size_t(i)].time <= design.cutoff);
    }

    RngStream replay(5, 3);
    const TwoArmDataset again = simulate_trial(design, sc, replay);
    for (int i = 0; i < 80; ++i) {
        CHECK(again.observations()[std::size_t(i)].time == obs[std::size_t(i)].time);
        CHECK(again.observations()[std::size_t(i)].event == obs[std::size_t(i)].event);
    }
}

TEST_CASE("deterministic entry uses the midpoint grid") {
    // A vanishing hazard censors everyone, exposing the entry times as
    // cutoff - entry.
    const PiecewiseExponential inert(1e-12);
    const Scenario sc{"inert", inert, inert};
    TrialDesign design;
    design.n_per_arm = 2;
    design.accrual_duration = 12.0;
    design.cutoff = 36.0;
    design.deterministic_entry = true;

    RngStream rng(1, 0);
    const TwoArmDataset data = simulate_trial(design, sc, rng);
    const std::vector<Observation>& obs = data.observations();
    REQUIRE(obs.size() == 4);
    for (const Observation& o : obs) CHECK_FALSE(o.event);
    CHECK(obs[0].time == doctest::Approx(33.0).epsilon(1e-12));  // entry 3
    CHECK(obs[1].time == doctest::Approx(27.0).epsilon(1e-12));  // entry 9
    CHECK(obs[2].time == doctest::Approx(33.0).epsilon(1e-12));
    CHECK(obs[3].time == doctest::Approx(27.0).epsilon(1e-12));
}

TEST_CASE("trial design validation") {
    const Scenario sc = scenario_by_name("B");
    RngStream rng(1, 0);
    TrialDesign bad;
    bad.n_per_arm = 0;
    CHECK_THROWS_AS(simulate_trial(bad, sc, rng), std::invalid_argument);
    bad = TrialDesign{};
    bad.accrual_duration = 0.0;
    CHECK_THROWS_AS(simulate_trial(bad, sc, rng), std::invalid_argument);
    bad = TrialDesign{};
    bad.cutoff = 6.0;  // earlier than the end of accrual
    CHECK_THROWS_WITH_AS(simulate_trial(bad, sc, rng),
                         doctest::Contains("no earlier than the end of accrual"),
                         std::invalid_argument);
}

TEST_CASE("null-scenario event fraction matches the censoring integral") {
    // Under scenario B every subject is exponential with rate r and the
    // follow-up horizon is uniform on (cutoff - accrual, cutoff), so
    // P(event) = 1 - (exp(-24r) - exp(-36r)) / (12r).
    const Scenario sc = scenario_by_name("B");
    TrialDesign design;
    design.n_per_arm = 500;
    const double r = kLn2 / 15.0;
    const double expected = 1.0 - (std::exp(-24.0 * r) - std::exp(-36.0 * r)) / (12.0 * r);

    int events = 0, total = 0;
    for (std::uint64_t rep = 0; rep < 30; ++rep) {
        RngStream rng(600, rep);
        const TwoArmDataset data = simulate_trial(design, sc, rng);
        for (const Observation& o : data.observations()) {
            total += 1;
            events += o.event ? 1 : 0;
        }
    }
    const double band = 4.0 * std::sqrt(expected * (1.0 - expected) / total);
    CHECK(std::abs(double(events) / total - expected) <= band);
}

TEST_CASE("analysis method parsing") {
    const AnalysisMethod lr = AnalysisMethod::parse("logrank");
    CHECK(lr.kind == AnalysisMethod::Kind::Wlrt);
    CHECK(lr.weights.kind == WeightSpec::Kind::LogRank);
    CHECK(lr.label() == "logrank");

    const AnalysisMethod fh = AnalysisMethod::parse("fh:0,1");
    CHECK(fh.weights.kind == WeightSpec::Kind::FlemingHarrington);
    CHECK(fh.weights.rho == 0.0);
    CHECK(fh.weights.gamma == 1.0);
    CHECK(fh.label() == "fh:0,1");
    CHECK(AnalysisMethod::parse("fh:0.5,2").label() == "fh:0.5,2");

    const AnalysisMethod mw = AnalysisMethod::parse("mwlrt:12");
    CHECK(mw.weights.kind == WeightSpec::Kind::Modest);
    CHECK(mw.weights.t_star == 12.0);
    CHECK(AnalysisMethod::parse("mwlrt:inf").weights.t_star ==
          std::numeric_limits<double>::infinity());

    const AnalysisMethod ms = AnalysisMethod::parse("milestone:21");
    CHECK(ms.kind == AnalysisMethod::Kind::Milestone);
    CHECK(ms.tau == 21.0);
    CHECK(ms.label() == "milestone:21");

    CHECK(AnalysisMethod::parse("gehan").kind == AnalysisMethod::Kind::Gehan);
    CHECK(AnalysisMethod::parse("wilcoxon").kind == AnalysisMethod::Kind::Wilcoxon);

    for (const char* bad : {"", "banana", "fh:1", "fh:a,b", "mwlrt:", "mwlrt:0",
                            "milestone:", "milestone:0", "milestone:-3", "logrank:1",
                            "gehan:2", "wilcoxon:x"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(AnalysisMethod::parse(bad), std::invalid_argument);
    }
}

TEST_CASE("power study determinism and bookkeeping") {
    const Scenario sc = scenario_by_name("A");
    TrialDesign design;
    design.n_per_arm = 60;
    const std::vector<AnalysisMethod> methods = {
        AnalysisMethod::parse("logrank"),
        AnalysisMethod::parse("fh:0,1"),
        AnalysisMethod::parse("milestone:21"),
    };

    const PowerResult one = power_study(design, sc, methods, 80, 0.025, 9, 1);
    const PowerResult four = power_study(design, sc, methods, 80, 0.025, 9, 4);
    const PowerResult redo = power_study(design, sc, methods, 80, 0.025, 9);
    REQUIRE(one.tests.size() == 3);
    CHECK(one.scenario == "A");
    CHECK(one.reps == 80);
    CHECK(one.seed == 9);
    CHECK(one.alpha == 0.025);
    for (std::size_t m = 0; m < methods.size(); ++m) {
        CHECK(one.tests[m].test == methods[m].label());
        CHECK(one.tests[m].rate == four.tests[m].rate);
        CHECK(one.tests[m].rate == redo.tests[m].rate);
        CHECK(one.tests[m].errors == four.tests[m].errors);
        CHECK(one.tests[m].rate >= 0.0);
        CHECK(one.tests[m].rate <= 1.0);
        CHECK(one.tests[m].se ==
              doctest::Approx(std::sqrt(one.tests[m].rate * (1.0 - one.tests[m].rate) / 80.0))
                  .epsilon(1e-12));
    }
}

TEST_CASE("milestones past the data horizon only produce errors") {
    // Every entry is strictly after time zero, so follow-up always ends
    // before the cutoff itself.
    const Scenario sc = scenario_by_name("B");
    TrialDesign design;
    design.n_per_arm = 20;
    const std::vector<AnalysisMethod> methods = {AnalysisMethod::parse("milestone:36")};
    const PowerResult res = power_study(design, sc, methods, 25, 0.025, 3);
    CHECK(res.tests[0].errors == 25);
    CHECK(res.tests[0].rate == 0.0);
}

TEST_CASE("power study rejects score-based methods and bad inputs") {
    const Scenario sc = scenario_by_name("B");
    const TrialDesign design;
    const std::vector<AnalysisMethod> lr = {AnalysisMethod::parse("logrank")};
    CHECK_THROWS_WITH_AS(
        power_study(design, sc, {AnalysisMethod::parse("gehan")}, 10, 0.025, 1),
        doctest::Contains("power study supports weighted log-rank and milestone"),
        std::invalid_argument);
    CHECK_THROWS_AS(power_study(design, sc, {AnalysisMethod::parse("wilcoxon")}, 10, 0.025, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(power_study(design, sc, lr, 0, 0.025, 1), std::invalid_argument);
    CHECK_THROWS_AS(power_study(design, sc, lr, 10, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(power_study(design, sc, lr, 10, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(power_study(design, sc, {}, 10, 0.025, 1), std::invalid_argument);
}

TEST_CASE("strengthening the late benefit cannot hurt log-rank power") {
    TrialDesign design;
    design.n_per_arm = 100;
    const std::vector<AnalysisMethod> lr = {AnalysisMethod::parse("logrank")};
    const Scenario base = scenario_by_name("A");
    const Scenario stronger{
        "A+", base.control, PiecewiseExponential({6.0}, {kLn2 / 15.0, kLn2 / 40.0})};

    const PowerResult weak = power_study(design, base, lr, 400, 0.025, 11);
    const PowerResult strong = power_study(design, stronger, lr, 400, 0.025, 11);
    const double band = 3.0 * std::sqrt(0.25 / 400.0);
    CHECK(strong.tests[0].rate >= weak.tests[0].rate - band);
}

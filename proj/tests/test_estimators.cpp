#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "survperm/estimators.hpp"
#include "test_helpers.hpp"

using namespace survperm;

TEST_CASE("step function queries: right value, left limit, leading 1") {
    StepFunction f({1.0, 2.0, 4.0}, {0.9, 0.5, 0.2});
    CHECK(f(0.5) == 1.0);
    CHECK(f(1.0) == 0.9);
    CHECK(f(1.5) == 0.9);
    CHECK(f(2.0) == 0.5);
    CHECK(f(100.0) == 0.2);
    CHECK(f.left_limit(1.0) == 1.0);
    CHECK(f.left_limit(2.0) == 0.9);
    CHECK(f.left_limit(2.5) == 0.5);
    CHECK_THROWS_AS(StepFunction({2.0, 1.0}, {0.5, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(StepFunction({1.0}, {0.5, 0.4}), std::invalid_argument);

    std::ostringstream os;
    f.write_csv(os);
    CHECK(os.str() == "time,value\n0,1\n1,0.9\n2,0.5\n4,0.2\n");
}

TEST_CASE("pooled Kaplan-Meier on the toy data") {
    const TwoArmDataset data = test_helpers::toy_dataset();
    const StepFunction km = kaplan_meier(data);
    CHECK(km(1.9) == 1.0);
    CHECK(km.left_limit(2.0) == 1.0);
    CHECK(km(2.0) == doctest::Approx(11.0 / 12.0).epsilon(1e-14));
    // survival drops to 0 at the final event (last subject at risk dies)
    CHECK(km(30.0) == 0.0);
    // event-table overload agrees exactly
    const StepFunction km2 = kaplan_meier(build_event_table(data));
    REQUIRE(km.jump_times() == km2.jump_times());
    for (std::size_t i = 0; i < km.values().size(); ++i) {
        CHECK(km.values()[i] == km2.values()[i]);
    }
}

TEST_CASE("Nelson-Aalen survival on the toy data") {
    const TwoArmDataset data = test_helpers::toy_dataset();
    const StepFunction na = nelson_aalen_survival(data);
    CHECK(na(1.0) == 1.0);
    CHECK(na(2.0) == doctest::Approx(std::exp(-1.0 / 12.0)).epsilon(1e-14));
    const double total = 1.0 / 12 + 1.0 / 10 + 1.0 / 9 + 1.0 / 7 + 1.0 / 6 + 1.0 / 5 +
                         1.0 / 4 + 1.0 / 3 + 1.0;
    CHECK(na(30.0) == doctest::Approx(std::exp(-total)).epsilon(1e-13));
    const StepFunction na2 = nelson_aalen_survival(build_event_table(data));
    CHECK(na(13.0) == na2(13.0));
}

TEST_CASE("estimators require at least one event") {
    std::vector<Observation> censored = {{1, false, 0}, {2, false, 1}};
    CHECK_THROWS_AS(kaplan_meier(std::span<const Observation>(censored)), std::runtime_error);
    CHECK_THROWS_AS(nelson_aalen_survival(std::span<const Observation>(censored)),
                    std::runtime_error);
}

TEST_CASE("per-arm KM from the pooled table equals KM on the split data") {
    RngStream rng(77, 0);
    for (int rep = 0; rep < 25; ++rep) {
        const TwoArmDataset data =
            test_helpers::random_dataset(rng, 8 + static_cast<int>(rng.below(50)), rep % 2 == 0);
        const EventTable table = build_event_table(data);
        for (int arm = 0; arm <= 1; ++arm) {
            const std::vector<Observation> split = data.arm_observations(arm);
            const bool arm_has_event =
                std::any_of(split.begin(), split.end(), [](const Observation& o) { return o.event; });
            if (!arm_has_event) {
                CHECK_THROWS_AS(arm_kaplan_meier(table, arm), std::runtime_error);
                continue;
            }
            const StepFunction a = arm_kaplan_meier(table, arm);
            const StepFunction b = kaplan_meier(std::span<const Observation>(split));
            REQUIRE(a.jump_times() == b.jump_times());
            for (std::size_t i = 0; i < a.values().size(); ++i) {
                CHECK(a.values()[i] == doctest::Approx(b.values()[i]).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("KM and Nelson-Aalen agree to first order") {
    RngStream rng(99, 1);
    for (int rep = 0; rep < 20; ++rep) {
        const TwoArmDataset data =
            test_helpers::random_dataset(rng, 10 + static_cast<int>(rng.below(80)), rep % 2 == 1);
        const EventTable table = build_event_table(data);
        const StepFunction km = kaplan_meier(table);
        const StepFunction na = nelson_aalen_survival(table);
        double bound = 0.0;
        for (std::size_t j = 0; j < table.rows.size(); ++j) {
            const double h = static_cast<double>(table.rows[j].d) / table.rows[j].n;
            bound += h * h;
            const double t = table.rows[j].time;
            CHECK(std::abs(km(t) - na(t)) <= bound + 1e-12);
        }
    }
}

TEST_CASE("curves ignore where post-last-event censorings fall") {
    TwoArmDataset a = TwoArmDataset::from_observations(
        {{1, true, 0}, {3, true, 1}, {4, false, 0}, {5, false, 1}});
    TwoArmDataset b = TwoArmDataset::from_observations(
        {{1, true, 0}, {3, true, 1}, {40, false, 0}, {50, false, 1}});
    const StepFunction km_a = kaplan_meier(a);
    const StepFunction km_b = kaplan_meier(b);
    CHECK(km_a.jump_times() == km_b.jump_times());
    CHECK(km_a.values() == km_b.values());
}

TEST_CASE("milestone test on the toy data at tau = 15") {
    const MilestoneResult r = milestone_test(test_helpers::toy_dataset(), 15.0);
    CHECK(r.s0_hat == doctest::Approx(5.0 / 12.0).epsilon(1e-14));
    CHECK(r.s1_hat == doctest::Approx(5.0 / 8.0).epsilon(1e-14));
    // Greenwood: var0 = (5/12)^2 (1/30 + 1/12 + 1/6), var1 = (5/8)^2 (1/30 + 1/12)
    const double var0 = (5.0 / 12) * (5.0 / 12) * (1.0 / 30 + 1.0 / 12 + 1.0 / 6);
    const double var1 = (5.0 / 8) * (5.0 / 8) * (1.0 / 30 + 1.0 / 12);
    CHECK(r.se == doctest::Approx(std::sqrt(var0 + var1)).epsilon(1e-13));
    CHECK(r.z == doctest::Approx((r.s1_hat - r.s0_hat) / r.se).epsilon(1e-13));
    CHECK(r.p == doctest::Approx(0.2492765).epsilon(1e-5));
}

TEST_CASE("milestone on mirrored arms gives z = 0, p = 0.5") {
    std::vector<Observation> obs;
    for (double t : {3.0, 5.0, 8.0, 13.0}) {
        obs.push_back({t, true, 0});
        obs.push_back({t, true, 1});
    }
    obs.push_back({20.0, false, 0});
    obs.push_back({20.0, false, 1});
    const MilestoneResult r =
        milestone_test(TwoArmDataset::from_observations(std::move(obs)), 10.0);
    CHECK(r.s0_hat == r.s1_hat);
    CHECK(r.z == 0.0);
    CHECK(r.p == 0.5);
}

TEST_CASE("milestone beyond follow-up or with no variance is rejected") {
    const TwoArmDataset toy = test_helpers::toy_dataset();
    CHECK_THROWS_WITH_AS(milestone_test(toy, 31.0),
                         doctest::Contains("milestone not estimable"), std::runtime_error);
    // tau before the first event on both arms: both estimates are 1 with zero variance
    CHECK_THROWS_WITH_AS(milestone_test(toy, 1.0),
                         doctest::Contains("milestone not estimable"), std::runtime_error);
    CHECK_THROWS_AS(milestone_test(toy, -2.0), std::invalid_argument);
}

#include "survperm/simulation.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "survperm/estimators.hpp"
#include "survperm/parallel.hpp"
#include "survperm/wlrt.hpp"

namespace survperm {

PiecewiseExponential::PiecewiseExponential(std::vector<double> changepoints,
                                           std::vector<double> rates)
    : changepoints_(std::move(changepoints)), rates_(std::move(rates)) {
    if (rates_.size() != changepoints_.size() + 1) {
        throw std::invalid_argument("piecewise exponential: need one rate per segment "
                                    "(changepoint count + 1)");
    }
    for (std::size_t k = 0; k < changepoints_.size(); ++k) {
        if (!(changepoints_[k] > 0.0) || !std::isfinite(changepoints_[k])) {
            throw std::invalid_argument("changepoints must be positive and finite");
        }
        if (k > 0 && !(changepoints_[k] > changepoints_[k - 1])) {
            throw std::invalid_argument("changepoints must be strictly increasing");
        }
    }
    for (double r : rates_) {
        if (!(r > 0.0) || !std::isfinite(r)) {
            throw std::invalid_argument("hazard rates must be positive and finite");
        }
    }
    cum_.reserve(changepoints_.size());
    double h = 0.0, prev = 0.0;
    for (std::size_t k = 0; k < changepoints_.size(); ++k) {
        h += rates_[k] * (changepoints_[k] - prev);
        prev = changepoints_[k];
        cum_.push_back(h);
    }
}

PiecewiseExponential::PiecewiseExponential(double rate)
    : PiecewiseExponential({}, {rate}) {}

double PiecewiseExponential::cumulative_hazard(double t) const {
    if (t <= 0.0) return 0.0;
    double h = 0.0, prev = 0.0;
    for (std::size_t k = 0; k < changepoints_.size(); ++k) {
        if (t <= changepoints_[k]) return h + rates_[k] * (t - prev);
        h = cum_[k];
        prev = changepoints_[k];
    }
    return h + rates_.back() * (t - prev);
}

double PiecewiseExponential::survival(double t) const {
    return std::exp(-cumulative_hazard(t));
}

double PiecewiseExponential::sample(double u) const {
    if (!(u > 0.0 && u < 1.0)) {
        throw std::invalid_argument("sample: u must lie strictly between 0 and 1");
    }
    const double target = -std::log(u);
    double prev_cum = 0.0, prev_t = 0.0;
    for (std::size_t k = 0; k < changepoints_.size(); ++k) {
        if (target <= cum_[k]) return prev_t + (target - prev_cum) / rates_[k];
        prev_cum = cum_[k];
        prev_t = changepoints_[k];
    }
    return prev_t + (target - prev_cum) / rates_.back();
}

Scenario scenario_by_name(const std::string& name) {
    const double ln2 = std::log(2.0);
    if (name == "A") {
        return Scenario{"A", PiecewiseExponential(ln2 / 15.0),
                        PiecewiseExponential({6.0}, {ln2 / 15.0, ln2 / 21.0})};
    }
    if (name == "B") {
        return Scenario{"B", PiecewiseExponential(ln2 / 15.0),
                        PiecewiseExponential(ln2 / 15.0)};
    }
    if (name == "C") {
        return Scenario{"C", PiecewiseExponential({27.0}, {ln2 / 15.0, ln2 / 25.0}),
                        PiecewiseExponential({7.0, 27.0}, {ln2 / 11.0, ln2 / 17.0, ln2 / 25.0})};
    }
    if (name == "D") {
        return Scenario{"D", PiecewiseExponential(ln2 / 15.0),
                        PiecewiseExponential(ln2 / 19.0)};
    }
    if (name == "E") {
        return Scenario{"E", PiecewiseExponential(ln2 / 15.0),
                        PiecewiseExponential({9.0, 18.0}, {ln2 / 25.0, ln2 / 18.0, ln2 / 13.0})};
    }
    throw std::invalid_argument("unknown scenario '" + name + "'; built-in scenarios are A-E");
}

namespace {

void check_design(const TrialDesign& design) {
    if (design.n_per_arm < 1) throw std::invalid_argument("n_per_arm must be at least 1");
    if (!(design.accrual_duration > 0.0) || !std::isfinite(design.accrual_duration)) {
        throw std::invalid_argument("accrual duration must be positive and finite");
    }
    if (!(design.cutoff >= design.accrual_duration) || !std::isfinite(design.cutoff)) {
        throw std::invalid_argument("cutoff must be finite and no earlier than the end of accrual");
    }
}

}  // namespace

TwoArmDataset simulate_trial(const TrialDesign& design, const Scenario& scenario,
                             RngStream& rng) {
    check_design(design);
    std::vector<Observation> obs;
    obs.reserve(2 * static_cast<std::size_t>(design.n_per_arm));
    for (int arm = 0; arm <= 1; ++arm) {
        const PiecewiseExponential& dist = arm == 0 ? scenario.control : scenario.experimental;
        for (int i = 0; i < design.n_per_arm; ++i) {
            const double entry =
                design.deterministic_entry
                    ? (i + 0.5) / design.n_per_arm * design.accrual_duration
                    : rng.uniform() * design.accrual_duration;
            const double latent = dist.sample(rng.uniform());
            const double horizon = design.cutoff - entry;
            Observation o;
            o.arm = arm;
            o.event = latent <= horizon;
            o.time = o.event ? latent : horizon;
            obs.push_back(o);
        }
    }
    return TwoArmDataset::from_observations(std::move(obs));
}

PowerResult power_study(const TrialDesign& design, const Scenario& scenario,
                        const std::vector<AnalysisMethod>& methods, std::uint64_t reps,
                        double alpha, std::uint64_t seed, unsigned threads) {
    check_design(design);
    if (reps < 1) throw std::invalid_argument("reps must be at least 1");
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("alpha must lie strictly between 0 and 1");
    }
    if (methods.empty()) throw std::invalid_argument("at least one test is required");
    for (const AnalysisMethod& m : methods) {
        if (m.kind != AnalysisMethod::Kind::Wlrt && m.kind != AnalysisMethod::Kind::Milestone) {
            throw std::invalid_argument(
                "power study supports weighted log-rank and milestone tests; got '" +
                m.label() + "' (permutation-based score tests are too slow per replicate)");
        }
    }

    std::vector<std::atomic<std::uint64_t>> rejections(methods.size());
    std::vector<std::atomic<std::uint64_t>> errors(methods.size());

    parallel_for(reps, [&](std::uint64_t r) {
        RngStream rng(seed, r);
        const TwoArmDataset data = simulate_trial(design, scenario, rng);
        double max0 = 0.0, max1 = 0.0;
        for (const Observation& o : data.observations()) {
            double& m = o.arm == 0 ? max0 : max1;
            if (o.time > m) m = o.time;
        }
        EventTable table;
        StepFunction pooled_km;
        bool have_table = false;
        try {
            table = build_event_table(data);
            pooled_km = kaplan_meier(table);
            have_table = true;
        } catch (const std::exception&) {
            // Zero events in the whole trial: every test errors below.
        }
        for (std::size_t m = 0; m < methods.size(); ++m) {
            try {
                if (!have_table) throw std::runtime_error("no events in dataset");
                double p;
                if (methods[m].kind == AnalysisMethod::Kind::Wlrt) {
                    p = wlrt(table, pooled_km, methods[m].weights).p;
                } else {
                    p = milestone_test(table, max0, max1, methods[m].tau).p;
                }
                if (p < alpha) rejections[m].fetch_add(1, std::memory_order_relaxed);
            } catch (const std::exception&) {
                errors[m].fetch_add(1, std::memory_order_relaxed);
            }
        }
    }, threads);

    PowerResult result;
    result.scenario = scenario.name;
    result.reps = reps;
    result.seed = seed;
    result.alpha = alpha;
    result.tests.reserve(methods.size());
    for (std::size_t m = 0; m < methods.size(); ++m) {
        PowerEntry entry;
        entry.test = methods[m].label();
        entry.rate = static_cast<double>(rejections[m].load()) / static_cast<double>(reps);
        entry.se = std::sqrt(entry.rate * (1.0 - entry.rate) / static_cast<double>(reps));
        entry.errors = errors[m].load();
        result.tests.push_back(entry);
    }
    return result;
}

}  // namespace survperm

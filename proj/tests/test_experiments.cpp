#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "swarmform/errors.hpp"
#include "swarmform/experiments.hpp"
#include "swarmform/rng.hpp"

using namespace swarmform;

namespace {

ScenarioSpec quick_spec() {
    ScenarioSpec spec;
    spec.N = 30;
    spec.disk_radius = std::sqrt(30.0 / 25.0);
    spec.metrics.t_max = 40.0;
    spec.metrics.T_w = 3.0;
    return spec;
}

void expect_same(const SuiteResult& a, const SuiteResult& b) {
    EXPECT_EQ(a.axis_names, b.axis_names);
    EXPECT_EQ(a.trials, b.trials);
    EXPECT_EQ(a.cells, b.cells);
}

}  // namespace

TEST(GainSweep, NoControlFails) {
    const auto res = gain_sweep({{{"G_r", {0.0}}, {"G_n", {0.0}}}, quick_spec(), {3, 1, 1}});
    ASSERT_EQ(res.cells.size(), 1u);
    EXPECT_EQ(res.cells[0].success_rate, 0.0);
    EXPECT_GT(res.cells[0].cost_mean, 2.0);
}

TEST(GainSweep, SingleCellEqualsDirectAggregate) {
    const auto base = quick_spec();
    const RunOptions opt{4, 11, 1};
    const auto res = gain_sweep({{{"G_r", {15.0}}, {"G_n", {8.0}}}, base, opt});
    std::vector<TrialSummary> direct;
    for (std::size_t t = 0; t < opt.trials; ++t) {
        ScenarioSpec s = base;
        s.seed = trial_seed(opt.master_seed, 0, t);
        auto sum = summarize_trial(run_trial(s), s.normalized());
        sum.cell = 0;
        sum.trial = t;
        sum.coords = {15.0, 8.0};
        direct.push_back(sum);
    }
    EXPECT_EQ(res.trials, direct);
    EXPECT_EQ(res.cells, aggregate(direct));
}

TEST(GainSweep, GridOrderAndEnvelopes) {
    const auto res = gain_sweep({{{"G_r", {5.0, 15.0}}, {"G_n", {2.0, 8.0, 12.0}}}, quick_spec(), {2, 3, 1}});
    ASSERT_EQ(res.cells.size(), 6u);
    EXPECT_EQ(res.cells[1].coords, (std::vector<double>{5.0, 8.0}));
    EXPECT_EQ(res.cells[3].coords, (std::vector<double>{15.0, 2.0}));
    for (const auto& c : res.cells) {
        EXPECT_EQ(c.trials, 2u);
        EXPECT_LE(c.e_theta_min, c.e_theta_mean);
        EXPECT_LE(c.e_theta_mean, c.e_theta_max);
        EXPECT_LE(c.e_L_min, c.e_L_mean);
        EXPECT_LE(c.e_L_mean, c.e_L_max);
    }
    const auto best = res.argmin_cost();
    for (const auto& c : res.cells) {
        EXPECT_LE(res.cells[best].cost_mean, c.cost_mean);
    }
    for (auto idx : res.low_cost_region()) {
        EXPECT_LE(res.cells[idx].cost_mean, 1.0);
    }
}

TEST(Suites, IndependentOfThreadCount) {
    const auto base = quick_spec();
    const auto serial = noise_suite(base, {0.0, 0.3}, {3, 5, 1});
    const auto parallel = noise_suite(base, {0.0, 0.3}, {3, 5, 4});
    expect_same(serial, parallel);
    expect_same(serial, noise_suite(base, {0.0, 0.3}, {3, 5, 1}));
}

TEST(Suites, ZeroNoiseMatchesPlainRuns) {
    const auto base = quick_spec();
    const auto noise = noise_suite(base, {0.0}, {3, 2, 1});
    const auto plain = gain_sweep({{{"G_r", {base.control.G_r}}}, base, {3, 2, 1}});
    for (std::size_t t = 0; t < 3; ++t) {
        EXPECT_EQ(noise.trials[t].e_theta_ss, plain.trials[t].e_theta_ss);
        EXPECT_EQ(noise.trials[t].e_L_ss, plain.trials[t].e_L_ss);
    }
}

TEST(Suites, EmptyFlexibilityScheduleMatchesPlainRuns) {
    const auto base = quick_spec();
    const auto flex = flexibility_suite(base, {}, {3, 2, 1});
    const auto plain = gain_sweep({{{"G_r", {base.control.G_r}}}, base, {3, 2, 1}});
    for (std::size_t t = 0; t < 3; ++t) {
        EXPECT_EQ(flex.trials[t].e_theta_ss, plain.trials[t].e_theta_ss);
        EXPECT_EQ(flex.trials[t].t_ss, plain.trials[t].t_ss);
    }
    EXPECT_THROW(flexibility_suite(base, {{5.0, RemoveAgents{0.1, {}}}}, {1, 1, 1}), UsageError);
}

TEST(Suites, SingleRemovalBarelyMoves) {
    auto base = quick_spec();
    base.N = 100;
    base.disk_radius = 2.0;
    base.metrics.t_max = 60.0;
    const RunOptions opt{3, 9, 1};
    const auto faults = fault_suite(base, 0.01, 30.0, opt);
    auto plain_base = base;
    plain_base.snapshot_times = {0.0, 30.0};
    const auto plain = flexibility_suite(plain_base, {}, opt);
    for (std::size_t t = 0; t < opt.trials; ++t) {
        EXPECT_EQ(faults.trials[t].final_agents, 99u);
        if (plain.trials[t].success) {
            EXPECT_NEAR(faults.trials[t].e_theta_ss, plain.trials[t].e_theta_ss, 0.05);
            EXPECT_NEAR(faults.trials[t].e_L_ss, plain.trials[t].e_L_ss, 0.05);
        }
        EXPECT_EQ(faults.trials[t].phase_settle.size(), 2u);
    }
}

TEST(Suites, ScalabilitySetsDiskRadius) {
    const auto res = scalability_suite(quick_spec(), {25.0, 36.0}, 3.0, {1, 1, 1});
    ASSERT_EQ(res.trials.size(), 2u);
    const auto& keys = parameter_keys();
    const auto col = [&](const std::string& k) {
        return static_cast<std::size_t>(std::find(keys.begin(), keys.end(), k) - keys.begin());
    };
    EXPECT_DOUBLE_EQ(res.trials[0].spec_values[col("r")], 1.0);
    EXPECT_DOUBLE_EQ(res.trials[1].spec_values[col("r")], 1.2);
    EXPECT_DOUBLE_EQ(res.trials[1].spec_values[col("R_s")], 3.0);
    EXPECT_EQ(res.trials[1].final_agents, 36u);
}

TEST(Suites, BaselineComparisonIsPaired) {
    auto base = quick_spec();
    base.metrics.t_max = 15.0;
    const auto cmp = baseline_comparison(base, {{"G", {1.0, 5.0}}, {"F_max", {2.0}}}, {25.0}, 3.0, {1, 1, 1},
                                         {2, 4, 1});
    ASSERT_EQ(cmp.main_scalability.trials.size(), 2u);
    for (std::size_t t = 0; t < 2; ++t) {
        const auto& m = cmp.main_scalability.trials[t];
        const auto& b = cmp.baseline_scalability.trials[t];
        EXPECT_EQ(m.seed, b.seed);
        EXPECT_EQ(m.controller, Controller::MainStatic);
        EXPECT_EQ(b.controller, Controller::Baseline);
        ScenarioSpec sm = base;
        sm.N = 25;
        sm.disk_radius = 1.0;
        sm.seed = m.seed;
        ScenarioSpec sb = sm;
        sb.controller = Controller::Baseline;
        EXPECT_EQ(initial_state(sm).swarm.positions, initial_state(sb).swarm.positions);
    }
    EXPECT_EQ(cmp.F_max_opt, 2.0);
    EXPECT_TRUE(cmp.G_opt == 1.0 || cmp.G_opt == 5.0);
}

TEST(Sweep, RejectsBadInput) {
    EXPECT_THROW(gain_sweep({{}, quick_spec(), {1, 1, 1}}), UsageError);
    EXPECT_THROW(gain_sweep({{{"G_r", {1.0}}}, quick_spec(), {0, 1, 1}}), UsageError);
    EXPECT_THROW(gain_sweep({{{"bogus", {1.0}}}, quick_spec(), {1, 1, 1}}), UsageError);
}

TEST(Rng, TrialSeedsDistinct) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t c = 0; c < 50; ++c) {
        for (std::uint64_t t = 0; t < 50; ++t) {
            seen.insert(trial_seed(1, c, t));
        }
    }
    EXPECT_EQ(seen.size(), 2500u);
    EXPECT_NE(make_stream(1, Stream::Noise)(), make_stream(1, Stream::Removals)());
}

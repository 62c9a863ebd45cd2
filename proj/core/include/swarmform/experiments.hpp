#pragma once

// Experiment recipes: gain sweeps and the robustness suites. Every trial's
// seed is trial_seed(master_seed, cell, trial), so results do not depend on
// how many worker threads run the trials.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "swarmform/scenario.hpp"
#include "swarmform/simulation.hpp"

namespace swarmform {

struct GridAxis {
    std::string name;  ///< a set_parameter key
    std::vector<double> values;
};

struct RunOptions {
    std::size_t trials{30};
    std::uint64_t master_seed{1};
    std::size_t jobs{1};
};

struct SweepSpec {
    std::vector<GridAxis> axes;
    ScenarioSpec base;
    RunOptions options;
};

struct TrialSummary {
    std::size_t cell{0};
    std::size_t trial{0};
    std::uint64_t seed{0};
    std::vector<double> coords;  ///< axis values of the cell
    Controller controller{Controller::MainStatic};
    std::vector<double> spec_values;  ///< get_parameter for each parameter_keys() entry
    double e_theta_ss{1.0};
    double e_L_ss{1.0};
    std::optional<double> T_theta;
    std::optional<double> T_L;
    std::optional<double> t_ss;
    bool success{false};
    double cost{0.0};
    double G_n_ss{0.0};     ///< swarm-average normal gain at t_ss (or at the end)
    double G_n_final{0.0};
    double t_end{0.0};
    std::size_t final_agents{0};
    /// max(T_theta, T_L) of each phase relative to its start; empty when it never settles.
    std::vector<std::optional<double>> phase_settle;

    bool operator==(const TrialSummary&) const = default;
};

struct CellAggregate {
    std::size_t cell{0};
    std::vector<double> coords;
    std::size_t trials{0};
    double e_theta_mean{0.0}, e_theta_min{0.0}, e_theta_max{0.0};
    double e_L_mean{0.0}, e_L_min{0.0}, e_L_max{0.0};
    double success_rate{0.0};
    double cost_mean{0.0};
    std::optional<double> T_theta_mean;  ///< over trials where T_theta is defined
    std::optional<double> T_L_mean;
    double G_n_ss_mean{0.0};

    bool operator==(const CellAggregate&) const = default;
};

struct SuiteResult {
    std::vector<std::string> axis_names;
    std::vector<CellAggregate> cells;
    std::vector<TrialSummary> trials;  ///< ordered by (cell, trial)

    /// Cell with the smallest mean cost (first on ties).
    std::size_t argmin_cost() const;
    /// Cells with mean cost <= 1.
    std::vector<std::size_t> low_cost_region() const;
};

/// Per-trial hook: receives the spec about to run (after cell overrides).
using SpecCustomizer = std::function<void(ScenarioSpec&, const std::vector<double>& coords)>;

TrialSummary summarize_trial(const TrialResult& result, const ScenarioSpec& spec);

/// Aggregates trials in index order; trials must be sorted by cell.
std::vector<CellAggregate> aggregate(const std::vector<TrialSummary>& trials);

/// Runs `options.trials` seeds for every cell of the Cartesian grid.
SuiteResult run_sweep(const SweepSpec& sweep, const SpecCustomizer& customize = {});

/// Tuning sweep over (G_r, G_n) or (G, F_max); report argmin_cost and low_cost_region.
SuiteResult gain_sweep(const SweepSpec& sweep);

SuiteResult fault_suite(const ScenarioSpec& base, double fraction, double t_remove,
                        const RunOptions& options);

SuiteResult noise_suite(const ScenarioSpec& base, const std::vector<double>& sigmas,
                        const RunOptions& options);

/// `schedule` holds set_L events; an empty schedule is a plain validation run.
SuiteResult flexibility_suite(const ScenarioSpec& base, const std::vector<Event>& schedule,
                              const RunOptions& options);

/// One cell per N with disk radius sqrt(N / 25) and the given sensing radius.
SuiteResult scalability_suite(const ScenarioSpec& base, const std::vector<double>& n_values,
                              double sensing_radius, const RunOptions& options);

/// Sensing-radius sweep at fixed N.
SuiteResult sensing_radius_suite(const ScenarioSpec& base, const std::vector<double>& rs_values,
                                 const RunOptions& options);

struct BaselineComparison {
    SuiteResult baseline_tuning;
    SuiteResult main_scalability;
    SuiteResult baseline_scalability;
    double G_opt{0.0};
    double F_max_opt{0.0};
};

/// Tunes the baseline on `baseline_axes` (G, F_max), then runs the same
/// scalability cells for both controllers with paired seeds.
BaselineComparison baseline_comparison(const ScenarioSpec& main_base,
                                       const std::vector<GridAxis>& baseline_axes,
                                       const std::vector<double>& n_values, double sensing_radius,
                                       const RunOptions& tuning_options,
                                       const RunOptions& options);

}  // namespace swarmform

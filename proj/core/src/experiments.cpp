#include "swarmform/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "swarmform/errors.hpp"
#include "swarmform/rng.hpp"

namespace swarmform {

std::size_t SuiteResult::argmin_cost() const {
    if (cells.empty()) {
        throw UsageError("argmin of an empty suite");
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < cells.size(); ++k) {
        if (cells[k].cost_mean < cells[best].cost_mean) {
            best = k;
        }
    }
    return best;
}

std::vector<std::size_t> SuiteResult::low_cost_region() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (cells[k].cost_mean <= 1.0) {
            out.push_back(k);
        }
    }
    return out;
}

TrialSummary summarize_trial(const TrialResult& result, const ScenarioSpec& spec) {
    TrialSummary s;
    s.seed = spec.seed;
    s.controller = spec.controller;
    for (const auto& key : parameter_keys()) {
        s.spec_values.push_back(get_parameter(spec, key));
    }
    const auto& trace = result.trace;
    s.e_theta_ss = trace.steady.e_theta_ss;
    s.e_L_ss = trace.steady.e_L_ss;
    s.T_theta = trace.convergence.T_theta;
    s.T_L = trace.convergence.T_L;
    s.t_ss = trace.steady.t_ss;
    s.success = trace.success;
    s.cost = tuning_cost(s.e_theta_ss, s.e_L_ss, spec.metrics);
    if (!trace.records.empty()) {
        const auto idx = trace.steady.index.value_or(trace.records.size() - 1);
        s.G_n_ss = trace.records[idx].G_n_mean;
        s.G_n_final = trace.records.back().G_n_mean;
        s.t_end = trace.records.back().t;
    }
    s.final_agents = result.final_state.size();
    for (const auto& phase : result.phases) {
        const auto& c = phase.convergence;
        s.phase_settle.push_back(c.T_theta && c.T_L ? std::optional<double>(std::max(*c.T_theta, *c.T_L))
                                                     : std::nullopt);
    }
    return s;
}

std::vector<CellAggregate> aggregate(const std::vector<TrialSummary>& trials) {
    std::vector<CellAggregate> cells;
    std::size_t k = 0;
    while (k < trials.size()) {
        const std::size_t cell = trials[k].cell;
        CellAggregate agg;
        agg.cell = cell;
        agg.coords = trials[k].coords;
        agg.e_theta_min = agg.e_L_min = std::numeric_limits<double>::infinity();
        agg.e_theta_max = agg.e_L_max = -std::numeric_limits<double>::infinity();
        double sum_theta = 0, sum_L = 0, sum_cost = 0, sum_gn = 0, sum_Tt = 0, sum_TL = 0;
        std::size_t n = 0, n_success = 0, n_Tt = 0, n_TL = 0;
        for (; k < trials.size() && trials[k].cell == cell; ++k) {
            const auto& t = trials[k];
            ++n;
            sum_theta += t.e_theta_ss;
            sum_L += t.e_L_ss;
            sum_cost += t.cost;
            sum_gn += t.G_n_ss;
            agg.e_theta_min = std::min(agg.e_theta_min, t.e_theta_ss);
            agg.e_theta_max = std::max(agg.e_theta_max, t.e_theta_ss);
            agg.e_L_min = std::min(agg.e_L_min, t.e_L_ss);
            agg.e_L_max = std::max(agg.e_L_max, t.e_L_ss);
            n_success += t.success ? 1 : 0;
            if (t.T_theta) {
                sum_Tt += *t.T_theta;
                ++n_Tt;
            }
            if (t.T_L) {
                sum_TL += *t.T_L;
                ++n_TL;
            }
        }
        const auto dn = static_cast<double>(n);
        agg.trials = n;
        agg.e_theta_mean = sum_theta / dn;
        agg.e_L_mean = sum_L / dn;
        agg.cost_mean = sum_cost / dn;
        agg.G_n_ss_mean = sum_gn / dn;
        agg.success_rate = static_cast<double>(n_success) / dn;
        if (n_Tt > 0) {
            agg.T_theta_mean = sum_Tt / static_cast<double>(n_Tt);
        }
        if (n_TL > 0) {
            agg.T_L_mean = sum_TL / static_cast<double>(n_TL);
        }
        cells.push_back(std::move(agg));
    }
    return cells;
}

namespace {

std::vector<std::vector<double>> cartesian(const std::vector<GridAxis>& axes) {
    std::vector<std::vector<double>> out{{}};
    for (const auto& axis : axes) {
        if (axis.values.empty()) {
            throw UsageError("grid axis '" + axis.name + "' has no values");
        }
        std::vector<std::vector<double>> next;
        for (const auto& prefix : out) {
            for (double v : axis.values) {
                auto row = prefix;
                row.push_back(v);
                next.push_back(std::move(row));
            }
        }
        out = std::move(next);
    }
    return out;
}

struct Job {
    std::size_t cell;
    std::size_t trial;
    ScenarioSpec spec;
    std::vector<double> coords;
};

std::vector<TrialSummary> run_jobs(const std::vector<Job>& jobs, std::size_t workers) {
    std::vector<TrialSummary> out(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) {
            try {
                const auto& job = jobs[k];
                const auto result = run_trial(job.spec);
                auto s = summarize_trial(result, job.spec.normalized());
                s.cell = job.cell;
                s.trial = job.trial;
                s.coords = job.coords;
                out[k] = std::move(s);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = jobs.size();
            }
        }
    };
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(jobs.size(), 1));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

}  // namespace

SuiteResult run_sweep(const SweepSpec& sweep, const SpecCustomizer& customize) {
    if (sweep.options.trials < 1) {
        throw UsageError("trials per cell must be >= 1");
    }
    SuiteResult result;
    for (const auto& axis : sweep.axes) {
        result.axis_names.push_back(axis.name);
    }
    const auto grid = cartesian(sweep.axes);
    std::vector<Job> jobs;
    jobs.reserve(grid.size() * sweep.options.trials);
    for (std::size_t cell = 0; cell < grid.size(); ++cell) {
        ScenarioSpec spec = sweep.base;
        for (std::size_t a = 0; a < sweep.axes.size(); ++a) {
            set_parameter(spec, sweep.axes[a].name, grid[cell][a]);
        }
        if (customize) {
            customize(spec, grid[cell]);
        }
        for (std::size_t trial = 0; trial < sweep.options.trials; ++trial) {
            ScenarioSpec s = spec;
            s.seed = trial_seed(sweep.options.master_seed, cell, trial);
            jobs.push_back({cell, trial, std::move(s), grid[cell]});
        }
    }
    result.trials = run_jobs(jobs, sweep.options.jobs);
    result.cells = aggregate(result.trials);
    return result;
}

SuiteResult gain_sweep(const SweepSpec& sweep) {
    if (sweep.axes.empty()) {
        throw UsageError("gain sweep needs at least one axis");
    }
    return run_sweep(sweep);
}

SuiteResult fault_suite(const ScenarioSpec& base, double fraction, double t_remove,
                        const RunOptions& options) {
    ScenarioSpec spec = base;
    spec.events.push_back({t_remove, RemoveAgents{fraction, {}}});
    spec.snapshot_times = {0.0, t_remove};
    return run_sweep({{}, spec, options});
}

SuiteResult noise_suite(const ScenarioSpec& base, const std::vector<double>& sigmas,
                        const RunOptions& options) {
    return run_sweep({{{"sigma", sigmas}}, base, options});
}

SuiteResult flexibility_suite(const ScenarioSpec& base, const std::vector<Event>& schedule,
                              const RunOptions& options) {
    ScenarioSpec spec = base;
    for (const auto& e : schedule) {
        if (!std::holds_alternative<SetLattice>(e.action)) {
            throw UsageError("flexibility schedule accepts set_L events only");
        }
        spec.events.push_back(e);
    }
    return run_sweep({{}, spec, options});
}

SuiteResult scalability_suite(const ScenarioSpec& base, const std::vector<double>& n_values,
                              double sensing_radius, const RunOptions& options) {
    ScenarioSpec spec = base;
    spec.geometry.R_s = sensing_radius;
    return run_sweep({{{"N", n_values}}, spec, options},
                     [](ScenarioSpec& s, const std::vector<double>&) {
                         s.disk_radius = std::sqrt(static_cast<double>(s.N) / 25.0);
                     });
}

SuiteResult sensing_radius_suite(const ScenarioSpec& base, const std::vector<double>& rs_values,
                                 const RunOptions& options) {
    return run_sweep({{{"R_s", rs_values}}, base, options});
}

BaselineComparison baseline_comparison(const ScenarioSpec& main_base,
                                       const std::vector<GridAxis>& baseline_axes,
                                       const std::vector<double>& n_values, double sensing_radius,
                                       const RunOptions& tuning_options,
                                       const RunOptions& options) {
    BaselineComparison out;
    ScenarioSpec baseline = main_base;
    baseline.controller = Controller::Baseline;
    out.baseline_tuning = gain_sweep({baseline_axes, baseline, tuning_options});
    const auto& best = out.baseline_tuning.cells[out.baseline_tuning.argmin_cost()];
    for (std::size_t a = 0; a < baseline_axes.size(); ++a) {
        set_parameter(baseline, baseline_axes[a].name, best.coords[a]);
    }
    out.G_opt = baseline.baseline.G;
    out.F_max_opt = baseline.baseline.F_max;
    out.main_scalability = scalability_suite(main_base, n_values, sensing_radius, options);
    out.baseline_scalability = scalability_suite(baseline, n_values, sensing_radius, options);
    return out;
}

}  // namespace swarmform

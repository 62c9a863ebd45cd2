#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "swarmform/errors.hpp"
#include "swarmform/experiments.hpp"
#include "swarmform/io/config.hpp"
#include "swarmform/io/csv.hpp"
#include "swarmform/io/manifest.hpp"
#include "swarmform/io/results.hpp"

namespace swarmform::cli {

namespace fs = std::filesystem;

namespace {

std::vector<double> parse_values(const std::string& name, const std::string& text) {
    std::vector<double> values;
    if (text.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ':')) {
            parts.push_back(io::parse_double(item, 0));
        }
        if (parts.size() != 3 || !(parts[1] > 0.0) || parts[2] < parts[0]) {
            throw UsageError("grid axis '" + name + "': expected start:step:stop with step > 0");
        }
        const auto count = static_cast<std::size_t>(std::floor((parts[2] - parts[0]) / parts[1] + 1e-9)) + 1;
        for (std::size_t k = 0; k < count; ++k) {
            values.push_back(parts[0] + static_cast<double>(k) * parts[1]);
        }
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            values.push_back(io::parse_double(item, 0));
        }
    }
    if (values.empty()) {
        throw UsageError("grid axis '" + name + "' has no values");
    }
    return values;
}

std::vector<GridAxis> parse_grid(const std::vector<std::string>& tokens) {
    std::vector<GridAxis> axes;
    for (const auto& tok : tokens) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw UsageError("grid axis '" + tok + "' must look like name=start:step:stop or name=v1,v2");
        }
        std::string name = tok.substr(0, eq);
        if (name == "Gr") {
            name = "G_r";
        } else if (name == "Gn") {
            name = "G_n";
        } else if (name == "Rs") {
            name = "R_s";
        }
        ScenarioSpec probe;
        get_parameter(probe, name);  // rejects unknown names
        axes.push_back({name, parse_values(name, tok.substr(eq + 1))});
    }
    return axes;
}

std::string join_args(const std::vector<std::string>& args) {
    std::string s = "swarmform";
    for (const auto& a : args) {
        s += ' ';
        s += a;
    }
    return s;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& fill) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    fill(out);
}

std::size_t default_jobs() {
    if (const char* env = std::getenv("SWARMFORM_JOBS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) {
            return static_cast<std::size_t>(v);
        }
    }
    return 1;
}

struct CommonOptions {
    std::string config;
    std::vector<std::string> overrides;
    std::string out_dir{"swarmform_out"};
};

ScenarioSpec resolve_spec(const CommonOptions& opts, bool config_required) {
    ScenarioSpec spec;
    if (!opts.config.empty()) {
        spec = io::load_config(opts.config);
    } else if (config_required) {
        throw io::ConfigError("--config is required");
    }
    for (const auto& o : opts.overrides) {
        io::apply_override(spec, o);
    }
    try {
        spec = spec.normalized();
        spec.validate();
    } catch (const UsageError& e) {
        throw io::ConfigError(std::string("resolved configuration: ") + e.what());
    }
    return spec;
}

int simulate(const CommonOptions& opts, std::optional<std::uint64_t> seed, std::ostream& out,
             const std::vector<std::string>& args) {
    io::RunManifest manifest;
    manifest.started_utc = io::utc_now();
    ScenarioSpec spec = resolve_spec(opts, true);
    if (seed) {
        spec.seed = *seed;
    }
    const auto result = run_trial(spec);

    const fs::path dir(opts.out_dir);
    fs::create_directories(dir);
    write_file(dir / "trace.csv", [&](std::ostream& o) { io::write_trace_csv(o, result.trace); });
    write_file(dir / "snapshots.csv", [&](std::ostream& o) { io::write_snapshots_csv(o, 0, result.snapshots); });

    manifest.command = join_args(args);
    manifest.config_json = io::render_config_json(spec);
    manifest.master_seed = spec.seed;
    manifest.finished_utc = io::utc_now();
    io::record_outputs(manifest, dir, {"trace.csv", "snapshots.csv"});
    io::write_manifest(dir / "manifest.json", manifest);

    const auto& st = result.trace.steady;
    out << "success=" << (result.trace.success ? "true" : "false")
        << " t_ss=" << io::format_optional(st.t_ss) << " e_theta_ss=" << io::format_double(st.e_theta_ss)
        << " e_L_ss=" << io::format_double(st.e_L_ss)
        << " T_theta=" << io::format_optional(result.trace.convergence.T_theta)
        << " T_L=" << io::format_optional(result.trace.convergence.T_L) << '\n';
    return result.trace.success ? kExitSuccess : kExitUnsuccessfulTrial;
}

struct SuiteOptions {
    std::string kind;
    std::optional<std::size_t> trials;
    std::vector<std::string> grid;
    std::size_t jobs{1};
    std::uint64_t master_seed{1};
    double fraction{0.3};
    double t_remove{30.0};
    std::string schedule{"6@30,4@60"};
    bool reset_gains{false};
    double sensing_radius{3.0};
    std::string n_values{"50,100,200,400"};
    std::size_t tuning_trials{30};
};

std::vector<Event> parse_schedule(const std::string& text, bool reset) {
    std::vector<Event> events;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto at = item.find('@');
        if (at == std::string::npos) {
            throw UsageError("schedule entry '" + item + "' must look like L@time");
        }
        const int L = static_cast<int>(io::parse_double(item.substr(0, at), 0));
        events.push_back({io::parse_double(item.substr(at + 1), 0), SetLattice{L, reset}});
    }
    return events;
}

struct SuiteOutput {
    std::string prefix;
    const SuiteResult* suite;
    std::string figure;
};

int suite(const CommonOptions& opts, const SuiteOptions& so, std::ostream& out,
          const std::vector<std::string>& args) {
    io::RunManifest manifest;
    manifest.started_utc = io::utc_now();
    ScenarioSpec base = resolve_spec(opts, false);
    RunOptions run{so.trials.value_or(30), so.master_seed, so.jobs};
    auto axes = parse_grid(so.grid);
    const auto axis = [&](const std::string& name) -> std::optional<std::vector<double>> {
        for (const auto& a : axes) {
            if (a.name == name) {
                return a.values;
            }
        }
        return std::nullopt;
    };

    const fs::path dir(opts.out_dir);
    fs::create_directories(dir);
    std::vector<SuiteResult> results;
    std::vector<SuiteOutput> outputs;
    results.reserve(4);
    std::vector<std::string> files;
    const bool adaptive = base.controller == Controller::MainAdaptive;

    if (so.kind == "tune") {
        if (axes.empty()) {
            axes = base.controller == Controller::Baseline
                       ? std::vector<GridAxis>{{"G", parse_values("G", "0:1:40")},
                                               {"F_max", parse_values("F_max", "0:0.5:10")}}
                       : std::vector<GridAxis>{{"G_r", parse_values("G_r", "0:1:30")},
                                               {"G_n", parse_values("G_n", "0:1:30")}};
        }
        results.push_back(gain_sweep({axes, base, run}));
        const std::string fig = base.controller == Controller::Baseline ? "fig10"
                                : base.control.L == 6                   ? "fig4a"
                                                                        : "fig4b";
        outputs.push_back({"", &results.back(), fig});
        const auto& best = results.back().cells[results.back().argmin_cost()];
        out << "argmin";
        for (std::size_t a = 0; a < axes.size(); ++a) {
            out << ' ' << axes[a].name << '=' << io::format_double(best.coords[a]);
        }
        out << " cost=" << io::format_double(best.cost_mean)
            << " cells_with_cost_le_1=" << results.back().low_cost_region().size() << '\n';
    } else if (so.kind == "faults") {
        results.push_back(fault_suite(base, so.fraction, so.t_remove, run));
        outputs.push_back({"", &results.back(), ""});
    } else if (so.kind == "noise") {
        results.push_back(noise_suite(base, axis("sigma").value_or(parse_values("sigma", "0:0.05:1")), run));
        outputs.push_back({"", &results.back(), "fig7"});
    } else if (so.kind == "flexibility") {
        results.push_back(flexibility_suite(base, parse_schedule(so.schedule, so.reset_gains), run));
        outputs.push_back({"", &results.back(), ""});
    } else if (so.kind == "scalability") {
        if (auto rs = axis("R_s")) {
            results.push_back(sensing_radius_suite(base, *rs, run));
            outputs.push_back({"", &results.back(), "fig9a"});
        } else {
            const auto ns = axis("N").value_or(parse_values("N", so.n_values));
            results.push_back(scalability_suite(base, ns, so.sensing_radius, run));
            outputs.push_back({"", &results.back(), adaptive ? "fig15" : "fig9b"});
        }
    } else if (so.kind == "compare-baseline") {
        std::vector<GridAxis> baseline_axes;
        for (const auto& a : axes) {
            if (a.name == "G" || a.name == "F_max") {
                baseline_axes.push_back(a);
            }
        }
        if (baseline_axes.empty()) {
            baseline_axes = {{"G", parse_values("G", "0:1:40")}, {"F_max", parse_values("F_max", "0:0.5:10")}};
        }
        RunOptions tuning = run;
        tuning.trials = so.tuning_trials;
        auto cmp = baseline_comparison(base, baseline_axes, axis("N").value_or(parse_values("N", so.n_values)),
                                       so.sensing_radius, tuning, run);
        results.push_back(std::move(cmp.baseline_tuning));
        results.push_back(std::move(cmp.main_scalability));
        results.push_back(std::move(cmp.baseline_scalability));
        outputs.push_back({"baseline_tuning_", &results[0], "fig10"});
        outputs.push_back({"main_scalability_", &results[1], "fig9b"});
        outputs.push_back({"baseline_scalability_", &results[2], "fig11"});
        write_file(dir / "comparison.csv", [&](std::ostream& o) {
            io::write_row(o, {"N", "e_theta_ss_mean_main", "e_theta_ss_mean_baseline", "e_L_ss_mean_main",
                              "e_L_ss_mean_baseline", "success_rate_main", "success_rate_baseline"});
            for (std::size_t k = 0; k < results[1].cells.size(); ++k) {
                const auto& m = results[1].cells[k];
                const auto& b = results[2].cells[k];
                io::write_row(o, {io::format_double(m.coords[0]), io::format_double(m.e_theta_mean),
                                  io::format_double(b.e_theta_mean), io::format_double(m.e_L_mean),
                                  io::format_double(b.e_L_mean), io::format_double(m.success_rate),
                                  io::format_double(b.success_rate)});
            }
        });
        files.push_back("comparison.csv");
        out << "baseline optimum G=" << io::format_double(cmp.G_opt)
            << " F_max=" << io::format_double(cmp.F_max_opt) << '\n';
    } else {
        throw UsageError("unknown suite kind '" + so.kind +
                         "' (expected tune, faults, noise, flexibility, scalability, compare-baseline)");
    }

    std::vector<io::FigureRow> figure;
    for (const auto& o : outputs) {
        write_file(dir / (o.prefix + "trials.csv"), [&](std::ostream& s) { io::write_trials_csv(s, *o.suite); });
        write_file(dir / (o.prefix + "cells.csv"), [&](std::ostream& s) { io::write_cells_csv(s, *o.suite); });
        files.push_back(o.prefix + "trials.csv");
        files.push_back(o.prefix + "cells.csv");
        if (!o.figure.empty()) {
            auto rows = io::figure_rows(*o.suite, o.figure);
            figure.insert(figure.end(), rows.begin(), rows.end());
        }
        for (const auto& c : o.suite->cells) {
            out << o.prefix << "cell " << c.cell;
            for (std::size_t a = 0; a < o.suite->axis_names.size(); ++a) {
                out << ' ' << o.suite->axis_names[a] << '=' << io::format_double(c.coords[a]);
            }
            out << " e_theta_ss=" << io::format_double(c.e_theta_mean) << " e_L_ss=" << io::format_double(c.e_L_mean)
                << " success_rate=" << io::format_double(c.success_rate) << " cost=" << io::format_double(c.cost_mean)
                << '\n';
        }
    }
    if (!figure.empty()) {
        write_file(dir / "figures.csv", [&](std::ostream& s) { io::write_figure_csv(s, figure); });
        files.push_back("figures.csv");
    }

    manifest.command = join_args(args);
    manifest.config_json = io::render_config_json(base);
    manifest.master_seed = so.master_seed;
    manifest.finished_utc = io::utc_now();
    io::record_outputs(manifest, dir, files);
    io::write_manifest(dir / "manifest.json", manifest);
    return kExitSuccess;
}

int metrics(const CommonOptions& opts, const std::string& path, std::ostream& out) {
    const ScenarioSpec spec = resolve_spec(opts, false);
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open snapshot file '" + path + "'");
    }
    const auto rows = io::metrics_from_snapshots(in, spec.geometry, spec.control.L, spec.control.orientation_offset);
    io::write_row(out, {"trial_id", "t", "agents", "links", "e_theta", "e_L"});
    for (const auto& r : rows) {
        io::write_row(out, {r.trial_id, io::format_double(r.t), std::to_string(r.agents), std::to_string(r.links),
                            io::format_double(r.e_theta), io::format_double(r.e_L)});
    }
    return kExitSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lattice-formation swarm simulator and experiment harness", "swarmform"};
    app.require_subcommand(1);

    CommonOptions sim_opts;
    std::optional<std::uint64_t> seed;
    auto* sim = app.add_subcommand("simulate", "Run one trial and write trace, snapshots and manifest");
    sim->add_option("--config", sim_opts.config, "Scenario file (YAML)")->required();
    sim->add_option("--seed", seed, "Trial seed (overrides the config)");
    sim->add_option("--set", sim_opts.overrides, "Override a config key: key=value")->take_all();
    sim->add_option("--out", sim_opts.out_dir, "Output directory");

    CommonOptions suite_opts;
    SuiteOptions so;
    so.jobs = default_jobs();
    auto* su = app.add_subcommand("suite", "Run an experiment suite");
    su->add_option("kind", so.kind, "tune | faults | noise | flexibility | scalability | compare-baseline")
        ->required();
    su->add_option("--config", suite_opts.config, "Base scenario file (defaults to built-in values)");
    su->add_option("--set", suite_opts.overrides, "Override a config key: key=value")->take_all();
    su->add_option("--out", suite_opts.out_dir, "Output directory");
    su->add_option("--trials", so.trials, "Trials per cell (M)");
    su->add_option("--grid", so.grid, "Axis spec name=start:step:stop or name=v1,v2,...")->take_all();
    su->add_option("--jobs", so.jobs, "Worker threads (default: $SWARMFORM_JOBS or 1)");
    su->add_option("--seed", so.master_seed, "Master seed");
    su->add_option("--fraction", so.fraction, "faults: fraction of agents removed");
    su->add_option("--t-remove", so.t_remove, "faults: removal time (s)");
    su->add_option("--schedule", so.schedule, "flexibility: comma list of L@time");
    su->add_flag("--reset-gains", so.reset_gains, "flexibility: zero adaptive gains when L changes");
    su->add_option("--rs", so.sensing_radius, "scalability: sensing radius R_s (m)");
    su->add_option("--n-values", so.n_values, "scalability: comma list of swarm sizes");
    su->add_option("--tuning-trials", so.tuning_trials, "compare-baseline: trials per tuning cell");

    CommonOptions met_opts;
    std::string snapshot_path;
    auto* met = app.add_subcommand("metrics", "Compute e_theta and e_L for every snapshot in a CSV file");
    met->add_option("snapshots", snapshot_path, "Snapshot CSV with x,y columns")->required();
    met->add_option("--config", met_opts.config, "Scenario file supplying L and link band");
    met->add_option("--set", met_opts.overrides, "Override a config key: key=value")->take_all();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitSuccess;
        }
        err << "error: " << e.what() << '\n';
        return kExitError;
    }

    try {
        if (sim->parsed()) {
            return simulate(sim_opts, seed, out, args);
        }
        if (su->parsed()) {
            return suite(suite_opts, so, out, args);
        }
        return metrics(met_opts, snapshot_path, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

}  // namespace swarmform::cli

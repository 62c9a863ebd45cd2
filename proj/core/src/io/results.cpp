#include "swarmform/io/results.hpp"

#include <charconv>
#include <ostream>
#include <sstream>

#include "swarmform/io/csv.hpp"

namespace swarmform::io {

namespace {

std::string join_phases(const std::vector<std::optional<double>>& phases) {
    std::string out;
    for (std::size_t k = 0; k < phases.size(); ++k) {
        if (k) {
            out += ';';
        }
        out += phases[k] ? format_double(*phases[k]) : std::string("none");
    }
    return out;
}

std::vector<std::optional<double>> split_phases(const std::string& text, std::size_t line) {
    std::vector<std::optional<double>> out;
    if (text.empty()) {
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        out.push_back(item == "none" ? std::nullopt : std::optional<double>(parse_double(item, line)));
    }
    return out;
}

std::size_t parse_size(const std::string& text, std::size_t line) {
    std::size_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw CsvError("invalid integer '" + text + "'", line);
    }
    return v;
}

}  // namespace

void write_trials_csv(std::ostream& out, const SuiteResult& suite) {
    std::vector<std::string> header = {"cell", "trial", "seed", "controller"};
    for (const auto& key : parameter_keys()) {
        if (key != "seed") {
            header.push_back(key);
        }
    }
    for (const char* col : {"e_theta_ss", "e_L_ss", "T_theta", "T_L", "t_ss", "success", "cost", "G_n_ss",
                            "G_n_final", "t_end", "final_agents", "phase_settle"}) {
        header.emplace_back(col);
    }
    write_row(out, header);
    const auto& keys = parameter_keys();
    for (const auto& t : suite.trials) {
        std::vector<std::string> row = {std::to_string(t.cell), std::to_string(t.trial), std::to_string(t.seed),
                                        std::string(to_string(t.controller))};
        for (std::size_t k = 0; k < keys.size(); ++k) {
            if (keys[k] != "seed") {
                row.push_back(k < t.spec_values.size() ? format_double(t.spec_values[k]) : std::string{});
            }
        }
        row.push_back(format_double(t.e_theta_ss));
        row.push_back(format_double(t.e_L_ss));
        row.push_back(format_optional(t.T_theta));
        row.push_back(format_optional(t.T_L));
        row.push_back(format_optional(t.t_ss));
        row.push_back(t.success ? "1" : "0");
        row.push_back(format_double(t.cost));
        row.push_back(format_double(t.G_n_ss));
        row.push_back(format_double(t.G_n_final));
        row.push_back(format_double(t.t_end));
        row.push_back(std::to_string(t.final_agents));
        row.push_back(join_phases(t.phase_settle));
        write_row(out, row);
    }
}

std::vector<TrialSummary> read_trials_csv(std::istream& in, const std::vector<std::string>& axis_names) {
    const CsvTable table = read_csv(in);
    const auto& keys = parameter_keys();
    std::vector<TrialSummary> out;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const auto line = table.row_lines[r];
        auto col = [&](std::string_view name) -> const std::string& { return row[table.column(name)]; };
        TrialSummary t;
        t.cell = parse_size(col("cell"), line);
        t.trial = parse_size(col("trial"), line);
        t.seed = std::stoull(col("seed"));
        t.controller = controller_from_string(col("controller"));
        for (const auto& key : keys) {
            t.spec_values.push_back(key == "seed" ? static_cast<double>(t.seed) : parse_double(col(key), line));
        }
        for (const auto& axis : axis_names) {
            t.coords.push_back(parse_double(col(axis), line));
        }
        t.e_theta_ss = parse_double(col("e_theta_ss"), line);
        t.e_L_ss = parse_double(col("e_L_ss"), line);
        t.T_theta = parse_optional(col("T_theta"), line);
        t.T_L = parse_optional(col("T_L"), line);
        t.t_ss = parse_optional(col("t_ss"), line);
        t.success = col("success") == "1";
        t.cost = parse_double(col("cost"), line);
        t.G_n_ss = parse_double(col("G_n_ss"), line);
        t.G_n_final = parse_double(col("G_n_final"), line);
        t.t_end = parse_double(col("t_end"), line);
        t.final_agents = parse_size(col("final_agents"), line);
        t.phase_settle = split_phases(col("phase_settle"), line);
        out.push_back(std::move(t));
    }
    return out;
}

void write_cells_csv(std::ostream& out, const SuiteResult& suite) {
    std::vector<std::string> header = {"cell"};
    for (const auto& a : suite.axis_names) {
        header.push_back(a);
    }
    for (const char* col : {"trials", "e_theta_mean", "e_theta_min", "e_theta_max", "e_L_mean", "e_L_min",
                            "e_L_max", "success_rate", "cost_mean", "T_theta_mean", "T_L_mean", "G_n_ss_mean"}) {
        header.emplace_back(col);
    }
    write_row(out, header);
    for (const auto& c : suite.cells) {
        std::vector<std::string> row = {std::to_string(c.cell)};
        for (double v : c.coords) {
            row.push_back(format_double(v));
        }
        row.push_back(std::to_string(c.trials));
        for (double v : {c.e_theta_mean, c.e_theta_min, c.e_theta_max, c.e_L_mean, c.e_L_min, c.e_L_max,
                         c.success_rate, c.cost_mean}) {
            row.push_back(format_double(v));
        }
        row.push_back(format_optional(c.T_theta_mean));
        row.push_back(format_optional(c.T_L_mean));
        row.push_back(format_double(c.G_n_ss_mean));
        write_row(out, row);
    }
}

std::vector<FigureRow> figure_rows(const SuiteResult& suite, const std::string& figure_id) {
    std::vector<FigureRow> rows;
    const std::string x_name = suite.axis_names.empty() ? "cell" : suite.axis_names[0];
    const std::string y_name = suite.axis_names.size() > 1 ? suite.axis_names[1] : "";
    for (const auto& c : suite.cells) {
        const double x = c.coords.empty() ? static_cast<double>(c.cell) : c.coords[0];
        const std::optional<double> y = c.coords.size() > 1 ? std::optional<double>(c.coords[1]) : std::nullopt;
        auto add = [&](const char* metric, double value) {
            rows.push_back({figure_id, x_name, x, y_name, y, metric, value});
        };
        if (y) {
            add("cost_mean", c.cost_mean);
            add("success_rate", c.success_rate);
        } else {
            add("e_theta_ss_mean", c.e_theta_mean);
            add("e_theta_ss_min", c.e_theta_min);
            add("e_theta_ss_max", c.e_theta_max);
            add("e_L_ss_mean", c.e_L_mean);
            add("e_L_ss_min", c.e_L_min);
            add("e_L_ss_max", c.e_L_max);
            add("success_rate", c.success_rate);
            add("G_n_ss_mean", c.G_n_ss_mean);
        }
    }
    return rows;
}

void write_figure_csv(std::ostream& out, const std::vector<FigureRow>& rows) {
    write_row(out, {"figure", "x_name", "x", "y_name", "y", "metric", "value"});
    for (const auto& r : rows) {
        write_row(out, {r.figure, r.x_name, format_double(r.x), r.y_name, format_optional(r.y), r.metric,
                        format_double(r.value)});
    }
}

}  // namespace swarmform::io

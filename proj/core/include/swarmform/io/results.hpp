#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "swarmform/experiments.hpp"

namespace swarmform::io {

/// One row per trial: cell, trial, seed, controller, every scenario
/// parameter, then the trial's results.
void write_trials_csv(std::ostream& out, const SuiteResult& suite);

/// Inverse of write_trials_csv; coords are rebuilt from the named axis columns.
std::vector<TrialSummary> read_trials_csv(std::istream& in, const std::vector<std::string>& axis_names);

/// One row per cell with mean/min/max envelopes.
void write_cells_csv(std::ostream& out, const SuiteResult& suite);

/// Long-format plot data: figure,x_name,x,y_name,y,metric,value.
struct FigureRow {
    std::string figure;
    std::string x_name;
    double x{0.0};
    std::string y_name;
    std::optional<double> y;
    std::string metric;
    double value{0.0};
};

/// Two-axis suites emit cost and success rate per cell; one-axis suites emit
/// the e_theta/e_L envelopes and mean G_n at steady state.
std::vector<FigureRow> figure_rows(const SuiteResult& suite, const std::string& figure_id);

void write_figure_csv(std::ostream& out, const std::vector<FigureRow>& rows);

}  // namespace swarmform::io

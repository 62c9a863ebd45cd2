#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "swarmform/geometry.hpp"
#include "swarmform/metrics.hpp"
#include "swarmform/simulation.hpp"

namespace swarmform::io {

/// Malformed tabular input; `line` is 1-based (0 when not tied to a line).
class CsvError : public std::runtime_error {
public:
    CsvError(const std::string& what, std::size_t line)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Shortest decimal that round-trips to the same double ("inf", "-inf", "nan" otherwise).
std::string format_double(double v);
std::string format_optional(const std::optional<double>& v);

double parse_double(std::string_view text, std::size_t line);
std::optional<double> parse_optional(std::string_view text, std::size_t line);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> row_lines;  ///< source line of each row

    /// Index of a column; throws CsvError if absent.
    std::size_t column(std::string_view name) const;
    std::optional<std::size_t> find_column(std::string_view name) const;
};

/// Plain comma-separated reader (no quoting); every row must match the header width.
CsvTable read_csv(std::istream& in);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

void write_trace_csv(std::ostream& out, const MetricsTrace& trace);

void write_snapshots_csv(std::ostream& out, std::size_t trial_id, const std::vector<Snapshot>& snapshots,
                         bool header = true);

/// Metrics of one snapshot group read back from a snapshot CSV.
struct SnapshotMetrics {
    std::string trial_id;
    double t{0.0};
    std::size_t agents{0};
    std::size_t links{0};
    double e_theta{1.0};
    double e_L{1.0};
};

/// Groups rows by (trial_id, t) in file order and evaluates both metrics.
/// Only x and y are required; missing trial_id/t columns mean a single group.
std::vector<SnapshotMetrics> metrics_from_snapshots(std::istream& in, const GeometryParams& geometry,
                                                    int L, double orientation_offset);

}  // namespace swarmform::io

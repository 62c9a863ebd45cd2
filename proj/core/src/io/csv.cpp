#include "swarmform/io/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>

namespace swarmform::io {

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_optional(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string{};
}

double parse_double(std::string_view text, std::size_t line) {
    if (text == "inf" || text == "+inf") {
        return INFINITY;
    }
    if (text == "-inf") {
        return -INFINITY;
    }
    if (text == "nan") {
        return NAN;
    }
    double v = 0.0;
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw CsvError("invalid number '" + std::string(text) + "'", line);
    }
    return v;
}

std::optional<double> parse_optional(std::string_view text, std::size_t line) {
    if (text.empty()) {
        return std::nullopt;
    }
    return parse_double(text, line);
}

std::size_t CsvTable::column(std::string_view name) const {
    if (auto c = find_column(name)) {
        return *c;
    }
    throw CsvError("missing column '" + std::string(name) + "'", 1);
}

std::optional<std::size_t> CsvTable::find_column(std::string_view name) const {
    for (std::size_t k = 0; k < header.size(); ++k) {
        if (header[k] == name) {
            return k;
        }
    }
    return std::nullopt;
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        std::string field = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        while (!field.empty() && (field.back() == ' ' || field.back() == '\r')) {
            field.pop_back();
        }
        while (!field.empty() && field.front() == ' ') {
            field.erase(field.begin());
        }
        out.push_back(std::move(field));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") {
            continue;
        }
        auto fields = split(line);
        if (!have_header) {
            table.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw CsvError("expected " + std::to_string(table.header.size()) + " fields, found " +
                               std::to_string(fields.size()),
                           line_no);
        }
        table.rows.push_back(std::move(fields));
        table.row_lines.push_back(line_no);
    }
    if (!have_header) {
        throw CsvError("empty input", 0);
    }
    return table;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t k = 0; k < fields.size(); ++k) {
        if (k) {
            out << ',';
        }
        out << fields[k];
    }
    out << '\n';
}

void write_trace_csv(std::ostream& out, const MetricsTrace& trace) {
    write_row(out, {"t", "e_theta", "e_L", "G_n_mean", "G_n_min", "G_n_max", "num_links", "num_agents"});
    for (const auto& r : trace.records) {
        write_row(out, {format_double(r.t), format_double(r.e_theta), format_double(r.e_L),
                        format_double(r.G_n_mean), format_double(r.G_n_min), format_double(r.G_n_max),
                        std::to_string(r.num_links), std::to_string(r.num_agents)});
    }
}

void write_snapshots_csv(std::ostream& out, std::size_t trial_id, const std::vector<Snapshot>& snapshots,
                         bool header) {
    if (header) {
        write_row(out, {"trial_id", "t", "agent_id", "x", "y", "G_n_i"});
    }
    const auto tid = std::to_string(trial_id);
    for (const auto& snap : snapshots) {
        const auto t = format_double(snap.t);
        for (std::size_t k = 0; k < snap.positions.size(); ++k) {
            write_row(out, {tid, t, std::to_string(snap.agent_ids[k]), format_double(snap.positions[k].x),
                            format_double(snap.positions[k].y), format_double(snap.normal_gains[k])});
        }
    }
}

std::vector<SnapshotMetrics> metrics_from_snapshots(std::istream& in, const GeometryParams& geometry,
                                                    int L, double orientation_offset) {
    const CsvTable table = read_csv(in);
    if (table.rows.empty()) {
        throw CsvError("snapshot file has no rows", 0);
    }
    const auto cx = table.column("x");
    const auto cy = table.column("y");
    const auto ct = table.find_column("t");
    const auto ctrial = table.find_column("trial_id");

    struct Group {
        SnapshotMetrics meta;
        std::vector<Vec2> positions;
    };
    std::vector<Group> groups;
    std::map<std::pair<std::string, std::string>, std::size_t> index;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const auto line = table.row_lines[r];
        const std::string trial = ctrial ? row[*ctrial] : std::string{};
        const std::string tkey = ct ? row[*ct] : std::string{"0"};
        const Vec2 p{parse_double(row[cx], line), parse_double(row[cy], line)};
        if (!p.is_finite()) {
            throw CsvError("non-finite position", line);
        }
        auto [it, inserted] = index.try_emplace({trial, tkey}, groups.size());
        if (inserted) {
            Group g;
            g.meta.trial_id = trial;
            g.meta.t = parse_double(tkey, line);
            groups.push_back(std::move(g));
        }
        groups[it->second].positions.push_back(p);
    }

    std::vector<SnapshotMetrics> out;
    for (auto& g : groups) {
        SwarmState state(std::move(g.positions), g.meta.t);
        const auto links = build_links(state, geometry);
        g.meta.agents = state.size();
        g.meta.links = links.size();
        g.meta.e_theta = regularity(links, L, orientation_offset);
        g.meta.e_L = compactness_from_degrees(link_degrees(links, state.size()), L);
        out.push_back(g.meta);
    }
    return out;
}

}  // namespace swarmform::io

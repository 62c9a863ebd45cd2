#include "swarmform/io/config.hpp"

#include <charconv>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>
#include <yaml-cpp/yaml.h>

#include "swarmform/errors.hpp"
#include "swarmform/io/csv.hpp"

namespace swarmform::io {

namespace {

const std::map<std::string, std::string, std::less<>>& accepted_ranges() {
    static const std::map<std::string, std::string, std::less<>> ranges = {
        {"R", "R > 0 (m)"},
        {"R_min", "0 < R_min <= R_max (m)"},
        {"R_max", "R_max >= R_min (m)"},
        {"V_max", "V_max > 0 (m/s)"},
        {"t_max", "t_max >= 0 (s)"},
        {"dt", "dt > 0 (s)"},
        {"T_w", "T_w > 0 (s)"},
        {"a", "a > 0"},
        {"b", "b > 0"},
        {"c", "integer c >= 1"},
        {"L", "L in {4, 6}"},
        {"controller", "one of main-static, main-adaptive, baseline"},
    };
    return ranges;
}

const std::set<std::string, std::less<>>& extra_keys() {
    static const std::set<std::string, std::less<>> keys = {
        "controller", "events", "snapshot_times", "snapshot_at_steady_state", "run_to_t_max"};
    return keys;
}

double scalar_to_double(const std::string& key, const std::string& text) {
    std::string t = text;
    if (t == ".inf" || t == ".Inf" || t == "inf" || t == "+inf" || t == "Infinity") {
        return INFINITY;
    }
    try {
        return parse_double(t, 0);
    } catch (const CsvError&) {
        throw ConfigError("key '" + key + "': expected a number, got '" + text + "'");
    }
}

std::uint64_t scalar_to_seed(const std::string& text) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw ConfigError("key 'seed': expected a non-negative integer, got '" + text + "'");
    }
    return v;
}

bool scalar_to_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw ConfigError("key '" + key + "': expected true or false, got '" + text + "'");
}

void set_scalar(ScenarioSpec& spec, const std::string& key, const std::string& value) {
    if (key == "controller") {
        spec.controller = controller_from_string(value);
    } else if (key == "seed") {
        spec.seed = scalar_to_seed(value);
    } else if (key == "snapshot_at_steady_state") {
        spec.snapshot_at_steady_state = scalar_to_bool(key, value);
    } else if (key == "run_to_t_max") {
        spec.run_to_t_max = scalar_to_bool(key, value);
    } else {
        set_parameter(spec, key, scalar_to_double(key, value));
    }
}

Event parse_event(const YAML::Node& node, std::size_t index) {
    const std::string where = "events[" + std::to_string(index) + "]";
    if (!node.IsMap() || !node["time"]) {
        throw ConfigError(where + ": expected a map with a 'time' key");
    }
    Event e;
    e.time = scalar_to_double(where + ".time", node["time"].Scalar());
    if (node["remove_fraction"]) {
        e.action = RemoveAgents{scalar_to_double(where + ".remove_fraction", node["remove_fraction"].Scalar()), {}};
    } else if (node["remove_ids"]) {
        RemoveAgents rm;
        for (const auto& id : node["remove_ids"]) {
            rm.ids.push_back(id.as<std::uint32_t>());
        }
        e.action = rm;
    } else if (node["set_L"]) {
        SetLattice sl;
        sl.L = static_cast<int>(scalar_to_double(where + ".set_L", node["set_L"].Scalar()));
        if (node["reset_gains"]) {
            sl.reset_adaptive_gains = scalar_to_bool(where + ".reset_gains", node["reset_gains"].Scalar());
        }
        e.action = sl;
    } else {
        throw ConfigError(where + ": expected one of remove_fraction, remove_ids, set_L");
    }
    return e;
}

}  // namespace

const std::vector<std::string>& required_keys() {
    static const std::vector<std::string> keys = {"R", "R_min", "R_max", "V_max", "t_max", "dt",
                                                  "T_w", "a", "b", "c", "L", "controller"};
    return keys;
}

ScenarioSpec parse_config(std::string_view text, std::string_view source) {
    const std::string src(source);
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::Exception& e) {
        throw ConfigError(src + ": " + e.what());
    }
    if (!root.IsMap()) {
        throw ConfigError(src + ": expected a mapping of keys to values");
    }
    for (const auto& key : required_keys()) {
        if (!root[key]) {
            throw ConfigError(src + ": missing required key '" + key + "' (accepted range: " +
                              accepted_ranges().find(key)->second + ")");
        }
    }

    ScenarioSpec spec;
    const auto& numeric = parameter_keys();
    try {
        for (const auto& kv : root) {
            const auto key = kv.first.as<std::string>();
            const auto& value = kv.second;
            const bool known = extra_keys().contains(key) ||
                               std::find(numeric.begin(), numeric.end(), key) != numeric.end();
            if (!known) {
                throw ConfigError("unknown key '" + key + "'");
            }
            if (key == "events") {
                spec.events.clear();
                std::size_t k = 0;
                for (const auto& ev : value) {
                    spec.events.push_back(parse_event(ev, k++));
                }
            } else if (key == "snapshot_times") {
                spec.snapshot_times.clear();
                for (const auto& t : value) {
                    spec.snapshot_times.push_back(scalar_to_double(key, t.Scalar()));
                }
            } else {
                if (!value.IsScalar()) {
                    throw ConfigError("key '" + key + "': expected a scalar value");
                }
                set_scalar(spec, key, value.Scalar());
            }
        }
        spec = spec.normalized();
        spec.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(src + ": " + e.what());
    } catch (const UsageError& e) {
        throw ConfigError(src + ": " + e.what());
    } catch (const YAML::Exception& e) {
        throw ConfigError(src + ": " + e.what());
    }
    return spec;
}

ScenarioSpec load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path.string());
}

void apply_override(ScenarioSpec& spec, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError("override '" + std::string(assignment) + "' is not of the form key=value");
    }
    const std::string key(assignment.substr(0, eq));
    const std::string value(assignment.substr(eq + 1));
    try {
        set_scalar(spec, key, value);
    } catch (const UsageError& e) {
        throw ConfigError(std::string("override: ") + e.what());
    }
}

namespace {

struct Entry {
    std::string key;
    std::string value;
};

std::vector<Entry> flat_entries(const ScenarioSpec& spec) {
    std::vector<Entry> out;
    out.push_back({"controller", std::string(to_string(spec.controller))});
    out.push_back({"seed", std::to_string(spec.seed)});
    for (const auto& key : parameter_keys()) {
        if (key == "seed") {
            continue;
        }
        const double v = get_parameter(spec, key);
        out.push_back({key, std::isinf(v) ? (v > 0 ? ".inf" : "-.inf") : format_double(v)});
    }
    out.push_back({"snapshot_at_steady_state", spec.snapshot_at_steady_state ? "true" : "false"});
    out.push_back({"run_to_t_max", spec.run_to_t_max ? "true" : "false"});
    return out;
}

}  // namespace

std::string render_config_yaml(const ScenarioSpec& spec) {
    std::ostringstream out;
    for (const auto& e : flat_entries(spec)) {
        out << e.key << ": " << e.value << '\n';
    }
    out << "snapshot_times: [";
    for (std::size_t k = 0; k < spec.snapshot_times.size(); ++k) {
        out << (k ? ", " : "") << format_double(spec.snapshot_times[k]);
    }
    out << "]\n";
    out << "events:" << (spec.events.empty() ? " []\n" : "\n");
    for (const auto& ev : spec.events) {
        out << "  - {time: " << format_double(ev.time);
        if (const auto* rm = std::get_if<RemoveAgents>(&ev.action)) {
            if (rm->ids.empty()) {
                out << ", remove_fraction: " << format_double(rm->fraction);
            } else {
                out << ", remove_ids: [";
                for (std::size_t k = 0; k < rm->ids.size(); ++k) {
                    out << (k ? ", " : "") << rm->ids[k];
                }
                out << "]";
            }
        } else {
            const auto& sl = std::get<SetLattice>(ev.action);
            out << ", set_L: " << sl.L << ", reset_gains: " << (sl.reset_adaptive_gains ? "true" : "false");
        }
        out << "}\n";
    }
    return out.str();
}

std::string render_config_json(const ScenarioSpec& spec) {
    nlohmann::ordered_json j;
    for (const auto& e : flat_entries(spec)) {
        if (e.key == "controller") {
            j[e.key] = e.value;
        } else if (e.key == "seed") {
            j[e.key] = spec.seed;
        } else if (e.key == "snapshot_at_steady_state" || e.key == "run_to_t_max") {
            j[e.key] = e.value == "true";
        } else if (e.value == ".inf" || e.value == "-.inf") {
            j[e.key] = e.value;  // JSON has no infinity literal; the YAML spelling parses back.
        } else {
            j[e.key] = get_parameter(spec, e.key);
        }
    }
    j["snapshot_times"] = spec.snapshot_times;
    j["events"] = nlohmann::ordered_json::array();
    for (const auto& ev : spec.events) {
        nlohmann::ordered_json e;
        e["time"] = ev.time;
        if (const auto* rm = std::get_if<RemoveAgents>(&ev.action)) {
            if (rm->ids.empty()) {
                e["remove_fraction"] = rm->fraction;
            } else {
                e["remove_ids"] = rm->ids;
            }
        } else {
            const auto& sl = std::get<SetLattice>(ev.action);
            e["set_L"] = sl.L;
            e["reset_gains"] = sl.reset_adaptive_gains;
        }
        j["events"].push_back(e);
    }
    return j.dump(2);
}

}  // namespace swarmform::io

#pragma once

// Scenario files are YAML (JSON is accepted too) with flat keys named after
// the simulation parameter table: R, R_min, R_max, V_max, t_max, dt, T_w, a,
// b, c, plus L, controller, G_r, G_n, N, r, seed, sigma, R_s, ... and an
// optional `events` list:
//
//   events:
//     - {time: 30, remove_fraction: 0.3}
//     - {time: 60, set_L: 6, reset_gains: true}

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "swarmform/scenario.hpp"

namespace swarmform::io {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Keys that must be present in every scenario file.
const std::vector<std::string>& required_keys();

/// Returns the normalized, validated spec.
ScenarioSpec parse_config(std::string_view text, std::string_view source = "<config>");
ScenarioSpec load_config(const std::filesystem::path& path);

/// Applies one `key=value` override (CLI --set). Validation is left to the caller.
void apply_override(ScenarioSpec& spec, std::string_view assignment);

/// Resolved configuration as a YAML document that parse_config reads back
/// to an identical spec.
std::string render_config_yaml(const ScenarioSpec& spec);

/// Same content as a JSON object (also accepted by parse_config).
std::string render_config_json(const ScenarioSpec& spec);

}  // namespace swarmform::io

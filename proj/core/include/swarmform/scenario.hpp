#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "swarmform/control.hpp"
#include "swarmform/geometry.hpp"
#include "swarmform/metrics.hpp"
#include "swarmform/physicomimetics.hpp"

namespace swarmform {

enum class Controller { MainStatic, MainAdaptive, Baseline };

std::string_view to_string(Controller c);
Controller controller_from_string(std::string_view s);

/// Removes round(fraction * N) random agents (at least one), or the listed
/// original agent ids when `ids` is non-empty.
struct RemoveAgents {
    double fraction{0.0};
    std::vector<std::uint32_t> ids;
    bool operator==(const RemoveAgents&) const = default;
};

struct SetLattice {
    int L{4};
    bool reset_adaptive_gains{false};
    bool operator==(const SetLattice&) const = default;
};

struct Event {
    double time{0.0};
    std::variant<RemoveAgents, SetLattice> action;
    bool operator==(const Event&) const = default;
};

struct ScenarioSpec {
    std::size_t N{100};
    double disk_radius{2.0};
    std::uint64_t seed{1};
    double noise_sigma{0.0};
    Controller controller{Controller::MainStatic};
    ControlParams control;
    BaselineParams baseline;
    GeometryParams geometry;
    MetricsConfig metrics;
    std::vector<Event> events;
    std::vector<double> snapshot_times{0.0, 1.0, 2.5};
    bool snapshot_at_steady_state{true};
    /// Keep integrating after steady state even when no events remain.
    bool run_to_t_max{false};

    /// Throws UsageError describing the first violated constraint.
    void validate() const;

    /// Copy with derived fields synchronised (adaptive flag, dead-zone
    /// threshold, baseline R) and events sorted by time.
    ScenarioSpec normalized() const;

    double dt() const { return metrics.dt; }
    double t_max() const { return metrics.t_max; }

    bool operator==(const ScenarioSpec&) const = default;
};

/// Sets a numeric scenario field by its config key (Table-style names such as
/// R_min, G_r, t_max; aliases Gr and Gn). Throws UsageError for unknown keys.
void set_parameter(ScenarioSpec& spec, std::string_view key, double value);

/// Reads a numeric scenario field by its config key.
double get_parameter(const ScenarioSpec& spec, std::string_view key);

/// Canonical numeric keys accepted by set_parameter, in config order.
const std::vector<std::string>& parameter_keys();

}  // namespace swarmform

#include "swarmform/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "swarmform/errors.hpp"

namespace swarmform {

std::string_view to_string(Controller c) {
    switch (c) {
        case Controller::MainStatic:
            return "main-static";
        case Controller::MainAdaptive:
            return "main-adaptive";
        case Controller::Baseline:
            return "baseline";
    }
    return "?";
}

Controller controller_from_string(std::string_view s) {
    if (s == "main-static") {
        return Controller::MainStatic;
    }
    if (s == "main-adaptive") {
        return Controller::MainAdaptive;
    }
    if (s == "baseline") {
        return Controller::Baseline;
    }
    throw UsageError("unknown controller '" + std::string(s) +
                     "' (expected main-static, main-adaptive or baseline)");
}

void ScenarioSpec::validate() const {
    if (N < 1) {
        throw UsageError("N must be >= 1");
    }
    if (!(disk_radius > 0.0)) {
        throw UsageError("r must be > 0");
    }
    if (!(noise_sigma >= 0.0)) {
        throw UsageError("sigma must be >= 0");
    }
    control.validate();
    baseline.validate();
    geometry.validate();
    metrics.validate();
    double previous = -INFINITY;
    for (const auto& e : events) {
        if (!(e.time >= 0.0 && e.time <= metrics.t_max)) {
            throw UsageError("event time must lie in [0, t_max]");
        }
        if (e.time < previous) {
            throw UsageError("events must be sorted by time");
        }
        previous = e.time;
        if (const auto* rm = std::get_if<RemoveAgents>(&e.action)) {
            if (rm->ids.empty() && !(rm->fraction > 0.0 && rm->fraction <= 1.0)) {
                throw UsageError("removal fraction must lie in (0, 1]");
            }
        } else if (const auto* sl = std::get_if<SetLattice>(&e.action)) {
            if (sl->L != 4 && sl->L != 6) {
                throw UsageError("set_L event needs L in {4, 6}");
            }
        }
    }
    for (double t : snapshot_times) {
        if (!(t >= 0.0)) {
            throw UsageError("snapshot times must be >= 0");
        }
    }
}

ScenarioSpec ScenarioSpec::normalized() const {
    ScenarioSpec out = *this;
    out.control.adaptive = controller == Controller::MainAdaptive;
    out.control.e_theta_star = metrics.e_theta_star;
    out.baseline.R = control.R;
    std::stable_sort(out.events.begin(), out.events.end(),
                     [](const Event& a, const Event& b) { return a.time < b.time; });
    return out;
}

}  // namespace swarmform

namespace swarmform {

namespace {

struct ParamRef {
    std::string_view key;
    double (*get)(const ScenarioSpec&){nullptr};
    void (*set)(ScenarioSpec&, double){nullptr};
};

int as_int(std::string_view key, double v) {
    if (v != std::floor(v) || std::abs(v) > 1e9) {
        throw UsageError(std::string(key) + " must be an integer");
    }
    return static_cast<int>(v);
}

#define SWARMFORM_FIELD(name, expr)                                                 \
    ParamRef {                                                                      \
        name, [](const ScenarioSpec& s) -> double { return (expr); },      \
            [](ScenarioSpec& s, double v) { (expr) = v; }                           \
    }

const std::vector<ParamRef>& registry() {
    static const std::vector<ParamRef> refs = {
        ParamRef{"N", [](const ScenarioSpec& s) { return static_cast<double>(s.N); },
                 [](ScenarioSpec& s, double v) {
                     const int n = as_int("N", v);
                     if (n < 1) {
                         throw UsageError("N must be >= 1");
                     }
                     s.N = static_cast<std::size_t>(n);
                 }},
        SWARMFORM_FIELD("r", s.disk_radius),
        ParamRef{"seed", [](const ScenarioSpec& s) { return static_cast<double>(s.seed); },
                 [](ScenarioSpec& s, double v) {
                     if (v < 0 || v != std::floor(v) || v > 9007199254740992.0) {
                         throw UsageError("seed must be a non-negative integer");
                     }
                     s.seed = static_cast<std::uint64_t>(v);
                 }},
        SWARMFORM_FIELD("sigma", s.noise_sigma),
        ParamRef{"L", [](const ScenarioSpec& s) { return static_cast<double>(s.control.L); },
                 [](ScenarioSpec& s, double v) { s.control.L = as_int("L", v); }},
        SWARMFORM_FIELD("R", s.control.R),
        SWARMFORM_FIELD("R_min", s.geometry.R_min),
        SWARMFORM_FIELD("R_max", s.geometry.R_max),
        SWARMFORM_FIELD("R_s", s.geometry.R_s),
        SWARMFORM_FIELD("V_max", s.control.V_max),
        SWARMFORM_FIELD("t_max", s.metrics.t_max),
        SWARMFORM_FIELD("dt", s.metrics.dt),
        SWARMFORM_FIELD("T_w", s.metrics.T_w),
        SWARMFORM_FIELD("a", s.control.a),
        SWARMFORM_FIELD("b", s.control.b),
        ParamRef{"c", [](const ScenarioSpec& s) { return static_cast<double>(s.control.c); },
                 [](ScenarioSpec& s, double v) { s.control.c = as_int("c", v); }},
        SWARMFORM_FIELD("G_r", s.control.G_r),
        SWARMFORM_FIELD("G_n", s.control.G_n),
        SWARMFORM_FIELD("orientation_offset", s.control.orientation_offset),
        SWARMFORM_FIELD("alpha", s.control.alpha),
        SWARMFORM_FIELD("e_theta_star", s.metrics.e_theta_star),
        SWARMFORM_FIELD("e_L_star", s.metrics.e_L_star),
        SWARMFORM_FIELD("G", s.baseline.G),
        SWARMFORM_FIELD("F_max", s.baseline.F_max),
        SWARMFORM_FIELD("m", s.baseline.m),
        SWARMFORM_FIELD("mu", s.baseline.mu),
    };
    return refs;
}

#undef SWARMFORM_FIELD

std::string_view canonical(std::string_view key) {
    if (key == "Gr") {
        return "G_r";
    }
    if (key == "Gn") {
        return "G_n";
    }
    if (key == "Rs") {
        return "R_s";
    }
    return key;
}

const ParamRef& lookup(std::string_view key) {
    const auto name = canonical(key);
    for (const auto& ref : registry()) {
        if (ref.key == name) {
            return ref;
        }
    }
    throw UsageError("unknown parameter '" + std::string(key) + "'");
}

}  // namespace

void set_parameter(ScenarioSpec& spec, std::string_view key, double value) {
    lookup(key).set(spec, value);
}

double get_parameter(const ScenarioSpec& spec, std::string_view key) {
    return lookup(key).get(spec);
}

const std::vector<std::string>& parameter_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const auto& ref : registry()) {
            out.emplace_back(ref.key);
        }
        return out;
    }();
    return keys;
}

}  // namespace swarmform

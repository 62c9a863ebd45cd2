#include "swarmform/geometry.hpp"

#include <cmath>
#include <string>

#include "swarmform/errors.hpp"

namespace swarmform {

SwarmState::SwarmState(std::vector<Vec2> pos, double t)
    : positions(std::move(pos)), normal_gains(positions.size(), 0.0), time(t) {}

void SwarmState::validate() const {
    if (positions.empty()) {
        throw UsageError("swarm state must contain at least one agent");
    }
    if (normal_gains.size() != positions.size()) {
        throw UsageError("normal_gains size " + std::to_string(normal_gains.size()) +
                         " does not match agent count " + std::to_string(positions.size()));
    }
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (!positions[i].is_finite()) {
            throw UsageError("non-finite position for agent " + std::to_string(i));
        }
        if (!(normal_gains[i] >= 0.0)) {
            throw UsageError("negative normal gain for agent " + std::to_string(i));
        }
    }
}

void GeometryParams::validate() const {
    if (!(R_s > 0.0)) {
        throw UsageError("R_s must be > 0");
    }
    if (!(R_min > 0.0) || !std::isfinite(R_min)) {
        throw UsageError("R_min must be finite and > 0");
    }
    if (!(R_max >= R_min) || !std::isfinite(R_max)) {
        throw UsageError("R_max must be finite and >= R_min");
    }
}

namespace {

void check_id(const SwarmState& state, AgentId id) {
    if (id >= state.size()) {
        throw UsageError("agent id " + std::to_string(id) + " out of range for N = " +
                         std::to_string(state.size()));
    }
}

}  // namespace

Vec2 relative_position(const SwarmState& state, AgentId i, AgentId j) {
    check_id(state, i);
    check_id(state, j);
    if (i == j) {
        throw UsageError("relative_position requires distinct agents");
    }
    return state.positions[i] - state.positions[j];
}

std::vector<AgentId> neighbourhood(const SwarmState& state, AgentId i, const GeometryParams& params) {
    check_id(state, i);
    std::vector<AgentId> out;
    const Vec2 xi = state.positions[i];
    for (AgentId j = 0; j < state.size(); ++j) {
        if (j == i) {
            continue;
        }
        if ((xi - state.positions[j]).norm() <= params.R_s) {
            out.push_back(j);
        }
    }
    return out;
}

std::vector<AgentId> adjacency_set(const SwarmState& state, AgentId i, const GeometryParams& params) {
    check_id(state, i);
    std::vector<AgentId> out;
    const Vec2 xi = state.positions[i];
    for (AgentId j = 0; j < state.size(); ++j) {
        if (j == i) {
            continue;
        }
        if (in_link_band((xi - state.positions[j]).norm(), params)) {
            out.push_back(j);
        }
    }
    return out;
}

LinkSet build_links(const SwarmState& state, const GeometryParams& params) {
    LinkSet set;
    const auto n = state.size();
    for (AgentId i = 0; i < n; ++i) {
        for (AgentId j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            const Vec2 r = state.positions[i] - state.positions[j];
            const double d = r.norm();
            if (in_link_band(d, params)) {
                set.links.push_back({i, j, r, d, link_angle(r)});
            }
        }
    }
    return set;
}

std::vector<std::size_t> link_degrees(const LinkSet& links, std::size_t n) {
    std::vector<std::size_t> deg(n, 0);
    for (const auto& l : links.links) {
        ++deg[l.i];
    }
    return deg;
}

double wrap_two_pi(double angle) {
    double a = std::fmod(angle, kTwoPi);
    if (a < 0.0) {
        a += kTwoPi;
    }
    // fmod + add can land exactly on 2pi for tiny negative inputs.
    return a >= kTwoPi ? 0.0 : a;
}

double link_angle(const Vec2& r) {
    if (r.x == 0.0 && r.y == 0.0) {
        throw DegenerateGeometryError("link angle undefined for zero vector");
    }
    return wrap_two_pi(std::atan2(r.y, r.x));
}

double pair_angle(double theta1, double theta2) {
    double d = std::remainder(theta1 - theta2, kTwoPi);  // in [-pi, pi]
    return std::abs(d);
}

}  // namespace swarmform

#pragma once

#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "swarmform/vec2.hpp"

namespace swarmform {

using AgentId = std::size_t;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Snapshot of all agents at one instant. normal_gains is only read by the
/// adaptive controller but is always sized N.
struct SwarmState {
    std::vector<Vec2> positions;
    std::vector<double> normal_gains;
    double time{0.0};

    SwarmState() = default;
    explicit SwarmState(std::vector<Vec2> pos, double t = 0.0);

    std::size_t size() const { return positions.size(); }

    /// Throws UsageError when N == 0, sizes differ, a position is non-finite
    /// or a gain is negative.
    void validate() const;

    bool operator==(const SwarmState&) const = default;
};

/// Sensing radius and link-length band. R_s may be +infinity (all-seeing).
struct GeometryParams {
    double R_s{std::numeric_limits<double>::infinity()};
    double R_min{0.6};
    double R_max{1.1};

    void validate() const;

    bool operator==(const GeometryParams&) const = default;
};

/// One directed link (i, j) with r_ij = x_i - x_j cached.
struct Link {
    AgentId i;
    AgentId j;
    Vec2 r;
    double length;
    double angle;  ///< in [0, 2pi)
};

/// Directed edge set E(t); both orientations of every link are present.
struct LinkSet {
    std::vector<Link> links;
    std::size_t size() const { return links.size(); }
    bool empty() const { return links.empty(); }
};

Vec2 relative_position(const SwarmState& state, AgentId i, AgentId j);

std::vector<AgentId> neighbourhood(const SwarmState& state, AgentId i, const GeometryParams& params);

std::vector<AgentId> adjacency_set(const SwarmState& state, AgentId i, const GeometryParams& params);

/// Brute-force O(N^2) construction. Links are ordered by (i, j).
LinkSet build_links(const SwarmState& state, const GeometryParams& params);

/// Per-agent link counts |A_i| derived from a LinkSet over n agents.
std::vector<std::size_t> link_degrees(const LinkSet& links, std::size_t n);

/// Angle of r measured counterclockwise from +x, in [0, 2pi).
/// Throws DegenerateGeometryError for the zero vector.
double link_angle(const Vec2& r);

/// Unsigned angle in [0, pi] between two directions given by their angles.
double pair_angle(double theta1, double theta2);

/// Wraps any angle into [0, 2pi).
double wrap_two_pi(double angle);

/// Closed-interval adjacency test used everywhere a link is decided.
inline bool in_link_band(double dist, const GeometryParams& g) {
    return dist >= g.R_min && dist <= g.R_max;
}

}  // namespace swarmform

#pragma once

#include <span>

#include "swarmform/geometry.hpp"

namespace swarmform {

/// Constants of the displacement-based lattice controller.
struct ControlParams {
    int L{4};                   ///< 4 = square lattice, 6 = triangular
    double R{1.0};              ///< desired link length (m)
    double G_r{15.0};           ///< radial gain
    double G_n{8.0};            ///< normal gain (static mode)
    double a{0.15};
    double b{0.15};
    int c{5};
    double V_max{5.0};          ///< speed limit (m/s)
    double orientation_offset{0.0};
    bool adaptive{false};
    double alpha{3.0};          ///< adaptation gain
    double e_theta_star{0.2};   ///< adaptation dead-zone

    void validate() const;

    bool operator==(const ControlParams&) const = default;
};

/// Terms closer than this are skipped in the radial sum (direction undefined).
inline constexpr double kMinRadialDistance = 1e-9;

/// Saturated Lennard-Jones profile min{a/d^2c - b/d^c, 1}.
double radial_interaction(double dist, const ControlParams& p);

Vec2 radial_input(const SwarmState& state, AgentId i, std::span<const AgentId> neighbours,
                  const ControlParams& p);

/// Signed deviation of theta from the nearest lattice direction, in (-pi/L, pi/L].
double angular_error(double theta, int L, double orientation_offset);

/// -(L/pi) * err.
double normal_interaction(double angular_err, int L);

/// Uses state.normal_gains[i] when p.adaptive, p.G_n otherwise.
Vec2 normal_input(const SwarmState& state, AgentId i, std::span<const AgentId> adjacency,
                  const ControlParams& p);

/// Norm clamp that preserves direction.
Vec2 clamp_speed(const Vec2& u, double v_max);

/// u_r + u_n with the speed limit applied, computing both neighbour sets.
Vec2 control_input(const SwarmState& state, AgentId i, const ControlParams& p,
                   const GeometryParams& geometry);

/// Mean |angular error| over the adjacency set scaled to [0, 1]; 0 if the set is empty.
double local_angular_error(const SwarmState& state, AgentId i, std::span<const AgentId> adjacency,
                           const ControlParams& p);

/// One forward-Euler step of the dead-zone integrator. Never decreases the gain.
double adapt_normal_gain(double gain, double e_theta_i, const ControlParams& p, double dt);

}  // namespace swarmform

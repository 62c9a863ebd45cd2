#include "swarmform/control.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "swarmform/errors.hpp"

namespace swarmform {

void ControlParams::validate() const {
    if (L != 4 && L != 6) {
        throw UsageError("L must be 4 or 6");
    }
    if (!(R > 0.0)) {
        throw UsageError("R must be > 0");
    }
    if (!(G_r >= 0.0) || !(G_n >= 0.0)) {
        throw UsageError("gains G_r and G_n must be >= 0");
    }
    if (!(a > 0.0) || !(b > 0.0)) {
        throw UsageError("a and b must be > 0");
    }
    if (c < 1) {
        throw UsageError("c must be a positive integer");
    }
    if (!(V_max > 0.0)) {
        throw UsageError("V_max must be > 0");
    }
    if (!std::isfinite(orientation_offset)) {
        throw UsageError("orientation_offset must be finite");
    }
    if (!(alpha > 0.0)) {
        throw UsageError("alpha must be > 0");
    }
    if (!(e_theta_star > 0.0 && e_theta_star < 1.0)) {
        throw UsageError("e_theta_star must lie in (0, 1)");
    }
}

double radial_interaction(double dist, const ControlParams& p) {
    if (!(dist > 0.0)) {
        throw DegenerateGeometryError("radial interaction needs a positive distance");
    }
    double dc = 1.0;
    for (int k = 0; k < p.c; ++k) {
        dc *= dist;
    }
    return std::min(p.a / (dc * dc) - p.b / dc, 1.0);
}

Vec2 radial_input(const SwarmState& state, AgentId i, std::span<const AgentId> neighbours,
                  const ControlParams& p) {
    Vec2 sum;
    for (AgentId j : neighbours) {
        const Vec2 r = state.positions[i] - state.positions[j];
        const double d = r.norm();
        if (d < kMinRadialDistance) {
            continue;
        }
        sum += r * (radial_interaction(d, p) / d);
    }
    return sum * p.G_r;
}

double angular_error(double theta, int L, double orientation_offset) {
    const double period = kTwoPi / L;
    const double half = period / 2.0;
    const double residual = theta - orientation_offset;
    double err = residual - period * std::round(residual / period);
    if (err <= -half) {
        err += period;
    } else if (err > half) {
        err -= period;
    }
    return err;
}

double normal_interaction(double angular_err, int L) {
    return -(L / std::numbers::pi) * angular_err;
}

Vec2 normal_input(const SwarmState& state, AgentId i, std::span<const AgentId> adjacency,
                  const ControlParams& p) {
    Vec2 sum;
    for (AgentId j : adjacency) {
        const Vec2 r = state.positions[i] - state.positions[j];
        const double d = r.norm();
        const double err = angular_error(link_angle(r), p.L, p.orientation_offset);
        sum += r.perp() * (normal_interaction(err, p.L) / d);
    }
    const double gain = p.adaptive ? state.normal_gains[i] : p.G_n;
    return sum * gain;
}

Vec2 clamp_speed(const Vec2& u, double v_max) {
    const double n = u.norm();
    if (n > v_max) {
        return u * (v_max / n);
    }
    return u;
}

Vec2 control_input(const SwarmState& state, AgentId i, const ControlParams& p,
                   const GeometryParams& geometry) {
    const auto nb = neighbourhood(state, i, geometry);
    const auto adj = adjacency_set(state, i, geometry);
    return clamp_speed(radial_input(state, i, nb, p) + normal_input(state, i, adj, p), p.V_max);
}

double local_angular_error(const SwarmState& state, AgentId i, std::span<const AgentId> adjacency,
                           const ControlParams& p) {
    if (adjacency.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (AgentId j : adjacency) {
        const Vec2 r = state.positions[i] - state.positions[j];
        sum += std::abs(angular_error(link_angle(r), p.L, p.orientation_offset));
    }
    return (p.L / std::numbers::pi) * sum / static_cast<double>(adjacency.size());
}

double adapt_normal_gain(double gain, double e_theta_i, const ControlParams& p, double dt) {
    if (e_theta_i > p.e_theta_star) {
        return gain + p.alpha * (e_theta_i - p.e_theta_star) * dt;
    }
    return gain;
}

}  // namespace swarmform

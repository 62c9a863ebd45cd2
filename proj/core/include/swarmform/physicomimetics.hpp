#pragma once

// Gravitational-like saturated virtual forces with compact support at 1.5 R,
// reduced to first-order dynamics. Square lattices use a binary spin per agent:
// same-spin pairs settle at sqrt(2) R, opposite-spin pairs at R.

#include <cstdint>
#include <span>
#include <vector>

#include "swarmform/geometry.hpp"
#include "swarmform/rng.hpp"

namespace swarmform {

struct BaselineParams {
    double G{35.0};      ///< gravitational gain
    double F_max{2.0};   ///< force saturation
    double R{1.0};
    double m{1.0};
    double mu{1.0};      ///< only documents the first-order reduction (mu = 1)

    void validate() const;

    bool operator==(const BaselineParams&) const = default;
};

using Spin = std::uint8_t;

/// Clamp into [lo, hi]; throws UsageError unless lo < hi.
double saturate(double x, double lo, double hi);

/// Signed force magnitude; positive pushes i away from j. f(R) is defined as 0.
double gravitational_force(double dist, const BaselineParams& p);

/// Sum of pairwise forces on agent i. For L == 4 `spins` must have one entry
/// per agent; same-spin pairs see the distance scaled by 1/sqrt(2).
Vec2 baseline_input(const SwarmState& state, AgentId i, const BaselineParams& p, int L,
                    std::span<const Spin> spins);

/// Force on i from j given r_ij and the spin relation; shared with the integrator.
Vec2 baseline_pair_force(const Vec2& r_ij, bool same_spin, const BaselineParams& p, int L);

/// i.i.d. fair spins, reproducible for a given engine state.
std::vector<Spin> assign_spins(std::size_t n, Engine& eng);

}  // namespace swarmform

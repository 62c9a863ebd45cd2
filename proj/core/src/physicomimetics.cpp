#include "swarmform/physicomimetics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/random/bernoulli_distribution.hpp>

#include "swarmform/errors.hpp"

namespace swarmform {

void BaselineParams::validate() const {
    if (!(G >= 0.0) || !(F_max >= 0.0)) {
        throw UsageError("G and F_max must be >= 0");
    }
    if (!(R > 0.0)) {
        throw UsageError("R must be > 0");
    }
    if (!(m > 0.0) || !(mu > 0.0)) {
        throw UsageError("m and mu must be > 0");
    }
}

double saturate(double x, double lo, double hi) {
    if (!(lo < hi)) {
        throw UsageError("saturate requires lo < hi");
    }
    return std::clamp(x, lo, hi);
}

double gravitational_force(double dist, const BaselineParams& p) {
    if (!(dist > 0.0)) {
        throw DegenerateGeometryError("gravitational force needs a positive distance");
    }
    if (dist == p.R || dist > 1.5 * p.R) {
        return 0.0;
    }
    // F_max == 0 collapses the saturation interval; the force is identically zero.
    const double magnitude =
        p.F_max > 0.0 ? saturate(p.G * p.m * p.m / (dist * dist), 0.0, p.F_max) : 0.0;
    return dist < p.R ? magnitude : -magnitude;
}

Vec2 baseline_pair_force(const Vec2& r_ij, bool same_spin, const BaselineParams& p, int L) {
    const double d = r_ij.norm();
    if (d < 1e-9) {
        return {};
    }
    const double effective = (L == 4 && same_spin) ? d / std::numbers::sqrt2 : d;
    return r_ij * (gravitational_force(effective, p) / d);
}

Vec2 baseline_input(const SwarmState& state, AgentId i, const BaselineParams& p, int L,
                    std::span<const Spin> spins) {
    if (L == 4 && spins.size() != state.size()) {
        throw UsageError("square-lattice baseline needs one spin per agent");
    }
    Vec2 sum;
    for (AgentId j = 0; j < state.size(); ++j) {
        if (j == i) {
            continue;
        }
        const bool same = L == 4 && spins[i] == spins[j];
        sum += baseline_pair_force(state.positions[i] - state.positions[j], same, p, L);
    }
    return sum;
}

std::vector<Spin> assign_spins(std::size_t n, Engine& eng) {
    if (n == 0) {
        throw UsageError("assign_spins needs at least one agent");
    }
    boost::random::bernoulli_distribution<double> coin(0.5);
    std::vector<Spin> spins(n);
    for (auto& s : spins) {
        s = coin(eng) ? 1 : 0;
    }
    return spins;
}

}  // namespace swarmform

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "swarmform/metrics.hpp"
#include "swarmform/rng.hpp"
#include "swarmform/scenario.hpp"

namespace swarmform {

/// Mutable per-trial state: the swarm plus the bookkeeping that must follow
/// agents through removals (original ids, spins) and the live lattice type.
struct SimState {
    SwarmState swarm;
    std::vector<std::uint32_t> ids;
    std::vector<Spin> spins;  ///< empty unless the baseline controller is active
    int L{4};

    std::size_t size() const { return swarm.size(); }
    bool operator==(const SimState&) const = default;
};

/// Everything one evaluation of the controller produces for a snapshot.
struct Evaluation {
    std::vector<Vec2> inputs;           ///< clamped u_i
    std::vector<double> local_errors;   ///< e_theta,i (main controller only)
    LinkSet links;
    std::vector<std::size_t> degrees;
};

/// Uniform-area samples in a disk of radius r: phi ~ U[0, 2pi), d = r sqrt(u).
std::vector<Vec2> sample_initial_positions(std::size_t n, double r, Engine& eng);

/// Initial state of a trial (positions, zero gains, spins for the baseline).
SimState initial_state(const ScenarioSpec& spec);

/// Control inputs and link geometry for the current snapshot. All inputs are
/// computed from the same snapshot (synchronous update).
Evaluation evaluate(const SimState& state, const ScenarioSpec& spec);

/// Advances by one Euler-Maruyama step using a precomputed evaluation.
SimState advance(const SimState& state, const Evaluation& eval, const ScenarioSpec& spec,
                 Engine& noise);

/// evaluate + advance. Throws ScenarioError when the result is non-finite.
SimState step(const SimState& state, const ScenarioSpec& spec, Engine& noise);

SimState apply_event(const SimState& state, const Event& event, Engine& removals);

struct Snapshot {
    double t{0.0};
    std::vector<std::uint32_t> agent_ids;
    std::vector<Vec2> positions;
    std::vector<double> normal_gains;
};

struct TrialResult {
    MetricsTrace trace;
    SimState final_state;
    std::vector<Snapshot> snapshots;
    std::vector<PhaseSummary> phases;  ///< one per segment between events
};

/// Called after each recorded sample with the state the sample describes.
using StepObserver = std::function<void(const SimState&, const TraceRecord&)>;

/// Integrates one trial. Stops at steady state when no future events remain
/// (unless run_to_t_max), otherwise at t_max. Reproducible from spec.seed.
TrialResult run_trial(const ScenarioSpec& spec, const StepObserver& observer = {});

}  // namespace swarmform

#include "swarmform/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <boost/random/uniform_int_distribution.hpp>

#include "swarmform/errors.hpp"

namespace swarmform {

std::vector<Vec2> sample_initial_positions(std::size_t n, double r, Engine& eng) {
    if (!(r > 0.0)) {
        throw UsageError("disk radius must be > 0");
    }
    std::vector<Vec2> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double phi = kTwoPi * uniform01(eng);
        const double d = r * std::sqrt(uniform01(eng));
        out.emplace_back(d * std::cos(phi), d * std::sin(phi));
    }
    return out;
}

SimState initial_state(const ScenarioSpec& spec) {
    SimState s;
    auto pos_rng = make_stream(spec.seed, Stream::InitialPositions);
    s.swarm = SwarmState(sample_initial_positions(spec.N, spec.disk_radius, pos_rng), 0.0);
    s.ids.resize(spec.N);
    std::iota(s.ids.begin(), s.ids.end(), 0U);
    s.L = spec.control.L;
    if (spec.controller == Controller::Baseline) {
        auto spin_rng = make_stream(spec.seed, Stream::Spins);
        s.spins = assign_spins(spec.N, spin_rng);
    }
    return s;
}

namespace {

void evaluate_main(const SimState& state, const ScenarioSpec& spec, Evaluation& ev) {
    const auto& pos = state.swarm.positions;
    const std::size_t n = pos.size();
    ControlParams p = spec.control;
    p.L = state.L;
    const auto& g = spec.geometry;

    std::vector<Vec2> radial(n);
    std::vector<Vec2> normal(n);
    std::vector<double> abs_err(n, 0.0);

    // Each unordered pair is visited once; agent i still accumulates its terms
    // in ascending j, matching radial_input/normal_input bit for bit.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec2 r = pos[i] - pos[j];
            const double d = r.norm();
            if (d <= g.R_s && d >= kMinRadialDistance) {
                const Vec2 v = r * (radial_interaction(d, p) / d);
                radial[i] += v;
                radial[j] -= v;
            }
            if (in_link_band(d, g)) {
                const Vec2 rji = -r;
                const double th_ij = link_angle(r);
                const double th_ji = link_angle(rji);
                const double err_ij = angular_error(th_ij, p.L, p.orientation_offset);
                const double err_ji = angular_error(th_ji, p.L, p.orientation_offset);
                normal[i] += r.perp() * (normal_interaction(err_ij, p.L) / d);
                normal[j] += rji.perp() * (normal_interaction(err_ji, p.L) / d);
                abs_err[i] += std::abs(err_ij);
                abs_err[j] += std::abs(err_ji);
                ev.links.links.push_back({i, j, r, d, th_ij});
                ev.links.links.push_back({j, i, rji, d, th_ji});
                ++ev.degrees[i];
                ++ev.degrees[j];
            }
        }
    }
    ev.local_errors.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double gain = p.adaptive ? state.swarm.normal_gains[i] : p.G_n;
        ev.inputs[i] = clamp_speed(radial[i] * p.G_r + normal[i] * gain, p.V_max);
        if (ev.degrees[i] > 0) {
            ev.local_errors[i] =
                (p.L / std::numbers::pi) * abs_err[i] / static_cast<double>(ev.degrees[i]);
        }
    }
}

void evaluate_baseline(const SimState& state, const ScenarioSpec& spec, Evaluation& ev) {
    const auto& pos = state.swarm.positions;
    const std::size_t n = pos.size();
    const auto& g = spec.geometry;
    std::vector<Vec2> force(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec2 r = pos[i] - pos[j];
            const bool same = state.L == 4 && state.spins[i] == state.spins[j];
            const Vec2 f = baseline_pair_force(r, same, spec.baseline, state.L);
            force[i] += f;
            force[j] -= f;
            const double d = r.norm();
            if (in_link_band(d, g)) {
                ev.links.links.push_back({i, j, r, d, link_angle(r)});
                ev.links.links.push_back({j, i, -r, d, link_angle(-r)});
                ++ev.degrees[i];
                ++ev.degrees[j];
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        ev.inputs[i] = clamp_speed(force[i], spec.control.V_max);
    }
    ev.local_errors.assign(n, 0.0);
}

void check_finite(const SimState& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!s.swarm.positions[i].is_finite() || !std::isfinite(s.swarm.normal_gains[i])) {
            std::ostringstream msg;
            msg << "non-finite state for agent " << s.ids[i] << " at t = " << s.swarm.time;
            throw ScenarioError(msg.str());
        }
    }
}

}  // namespace

Evaluation evaluate(const SimState& state, const ScenarioSpec& spec) {
    Evaluation ev;
    ev.inputs.assign(state.size(), Vec2{});
    ev.degrees.assign(state.size(), 0);
    if (spec.controller == Controller::Baseline) {
        evaluate_baseline(state, spec, ev);
    } else {
        evaluate_main(state, spec, ev);
    }
    return ev;
}

SimState advance(const SimState& state, const Evaluation& eval, const ScenarioSpec& spec,
                 Engine& noise) {
    SimState next = state;
    const double dt = spec.dt();
    const double diffusion = spec.noise_sigma * std::sqrt(dt);
    auto& pos = next.swarm.positions;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        pos[i] += eval.inputs[i] * dt;
        if (spec.noise_sigma > 0.0) {
            const double nx = standard_normal(noise);
            const double ny = standard_normal(noise);
            pos[i] += Vec2{nx, ny} * diffusion;
        }
    }
    if (spec.controller == Controller::MainAdaptive) {
        for (std::size_t i = 0; i < pos.size(); ++i) {
            next.swarm.normal_gains[i] = adapt_normal_gain(state.swarm.normal_gains[i],
                                                           eval.local_errors[i], spec.control, dt);
        }
    }
    next.swarm.time = state.swarm.time + dt;
    check_finite(next);
    return next;
}

SimState step(const SimState& state, const ScenarioSpec& spec, Engine& noise) {
    check_finite(state);
    return advance(state, evaluate(state, spec), spec, noise);
}

SimState apply_event(const SimState& state, const Event& event, Engine& removals) {
    SimState next = state;
    if (const auto* sl = std::get_if<SetLattice>(&event.action)) {
        next.L = sl->L;
        if (sl->reset_adaptive_gains) {
            std::fill(next.swarm.normal_gains.begin(), next.swarm.normal_gains.end(), 0.0);
        }
        return next;
    }
    const auto& rm = std::get<RemoveAgents>(event.action);
    const std::size_t n = state.size();
    std::vector<bool> drop(n, false);
    std::size_t count = 0;
    if (!rm.ids.empty()) {
        for (auto id : rm.ids) {
            auto it = std::find(state.ids.begin(), state.ids.end(), id);
            if (it != state.ids.end() && !drop[it - state.ids.begin()]) {
                drop[it - state.ids.begin()] = true;
                ++count;
            }
        }
    } else {
        count = static_cast<std::size_t>(std::llround(rm.fraction * static_cast<double>(n)));
        count = std::max<std::size_t>(count, 1);
        if (count >= n) {
            throw ScenarioError("removal event would remove every agent");
        }
        // Partial Fisher-Yates over indices.
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        for (std::size_t k = 0; k < count; ++k) {
            boost::random::uniform_int_distribution<std::size_t> pick(k, n - 1);
            std::swap(idx[k], idx[pick(removals)]);
            drop[idx[k]] = true;
        }
    }
    if (count >= n) {
        throw ScenarioError("removal event would remove every agent");
    }
    SimState out;
    out.L = state.L;
    out.swarm.time = state.swarm.time;
    for (std::size_t i = 0; i < n; ++i) {
        if (drop[i]) {
            continue;
        }
        out.swarm.positions.push_back(state.swarm.positions[i]);
        out.swarm.normal_gains.push_back(state.swarm.normal_gains[i]);
        out.ids.push_back(state.ids[i]);
        if (!state.spins.empty()) {
            out.spins.push_back(state.spins[i]);
        }
    }
    return out;
}

namespace {

TraceRecord make_record(const SimState& s, const Evaluation& ev, const ScenarioSpec& spec) {
    TraceRecord rec;
    rec.t = s.swarm.time;
    rec.e_theta = regularity(ev.links, s.L, spec.control.orientation_offset);
    rec.e_L = compactness_from_degrees(ev.degrees, s.L);
    rec.num_links = ev.links.size();
    rec.num_agents = s.size();
    const auto& gains = s.swarm.normal_gains;
    if (spec.controller == Controller::MainAdaptive) {
        const auto [lo, hi] = std::minmax_element(gains.begin(), gains.end());
        rec.G_n_min = *lo;
        rec.G_n_max = *hi;
        rec.G_n_mean = std::accumulate(gains.begin(), gains.end(), 0.0) / static_cast<double>(gains.size());
    } else if (spec.controller == Controller::MainStatic) {
        rec.G_n_min = rec.G_n_max = rec.G_n_mean = spec.control.G_n;
    }
    return rec;
}

Snapshot make_snapshot(const SimState& s) {
    return {s.swarm.time, s.ids, s.swarm.positions, s.swarm.normal_gains};
}

}  // namespace

TrialResult run_trial(const ScenarioSpec& raw_spec, const StepObserver& observer) {
    const ScenarioSpec spec = raw_spec.normalized();
    spec.validate();

    TrialResult result;
    SimState state = initial_state(spec);
    const double dt = spec.dt();
    const double half_dt = dt / 2.0;
    if (spec.t_max() <= 0.0) {
        result.final_state = state;
        return result;
    }

    auto noise = make_stream(spec.seed, Stream::Noise);
    auto removals = make_stream(spec.seed, Stream::Removals);
    const auto last_step = static_cast<std::size_t>(std::floor(spec.t_max() / dt + 1e-9));
    SteadyStateDetector detector(spec.metrics);
    std::size_t next_event = 0;
    std::vector<bool> snapshot_taken(spec.snapshot_times.size(), false);
    bool steady_snapshot_taken = false;

    for (std::size_t k = 0;; ++k) {
        const double t = static_cast<double>(k) * dt;
        state.swarm.time = t;
        while (next_event < spec.events.size() && spec.events[next_event].time <= t + half_dt) {
            state = apply_event(state, spec.events[next_event], removals);
            ++next_event;
            detector = SteadyStateDetector(spec.metrics);
            steady_snapshot_taken = false;
        }

        const Evaluation ev = evaluate(state, spec);
        const TraceRecord rec = make_record(state, ev, spec);
        result.trace.records.push_back(rec);
        if (observer) {
            observer(state, rec);
        }
        for (std::size_t s = 0; s < spec.snapshot_times.size(); ++s) {
            if (!snapshot_taken[s] && std::abs(spec.snapshot_times[s] - t) <= half_dt) {
                snapshot_taken[s] = true;
                result.snapshots.push_back(make_snapshot(state));
            }
        }
        const bool steady = detector.push(rec.e_theta, rec.e_L);
        if (steady && spec.snapshot_at_steady_state && !steady_snapshot_taken) {
            steady_snapshot_taken = true;
            result.snapshots.push_back(make_snapshot(state));
        }
        const bool events_pending = next_event < spec.events.size();
        if (k >= last_step || (steady && !events_pending && !spec.run_to_t_max)) {
            break;
        }
        state = advance(state, ev, spec, noise);
    }

    std::sort(result.snapshots.begin(), result.snapshots.end(),
              [](const Snapshot& a, const Snapshot& b) { return a.t < b.t; });
    result.snapshots.erase(std::unique(result.snapshots.begin(), result.snapshots.end(),
                                       [](const Snapshot& a, const Snapshot& b) { return a.t == b.t; }),
                           result.snapshots.end());
    finalize(result.trace, spec.metrics);
    std::vector<double> boundaries;
    for (const auto& e : spec.events) {
        boundaries.push_back(e.time);
    }
    result.phases = phase_summaries(result.trace.records, boundaries, spec.metrics);
    if (result.phases.size() > 1) {
        // the trial is judged on the configuration it ends in
        const auto& last = result.phases.back();
        const auto& recs = result.trace.records;
        const auto begin = static_cast<std::size_t>(
            std::find_if(recs.begin(), recs.end(), [&](const TraceRecord& r) { return r.t >= last.t_start; }) -
            recs.begin());
        result.trace.steady = last.steady;
        if (last.steady.index) {
            result.trace.steady.index = *last.steady.index + begin;
        }
        result.trace.success = last.success;
    }
    result.final_state = state;
    return result;
}

}  // namespace swarmform

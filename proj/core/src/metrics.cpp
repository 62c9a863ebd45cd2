#include "swarmform/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "swarmform/errors.hpp"

namespace swarmform {

void MetricsConfig::validate() const {
    if (!(e_theta_star > 0.0 && e_theta_star < 1.0)) {
        throw UsageError("e_theta_star must lie in (0, 1)");
    }
    if (!(e_L_star > 0.0 && e_L_star < 1.0)) {
        throw UsageError("e_L_star must lie in (0, 1)");
    }
    if (!(dt > 0.0) || !(T_w > 0.0) || !(t_max >= 0.0)) {
        throw UsageError("dt and T_w must be > 0, t_max >= 0");
    }
}

std::size_t MetricsConfig::window_steps() const {
    return static_cast<std::size_t>(std::floor(T_w / dt + 1e-9));
}

namespace {

// Link phases closer than this to a lattice direction count as exact.
constexpr double kLatticeSnap = 1e-12;

}  // namespace

double regularity(const LinkSet& links, int L, double orientation_offset) {
    const std::size_t e = links.size();
    if (e <= 2) {
        return 1.0;
    }
    const double period = kTwoPi / L;
    const double half = period / 2.0;

    std::vector<double> phi;
    phi.reserve(e);
    for (const auto& l : links.links) {
        double v = std::fmod(l.angle - orientation_offset, period);
        if (v < 0.0) {
            v += period;
        }
        if (v < kLatticeSnap || period - v < kLatticeSnap) {
            v = 0.0;
        }
        phi.push_back(v);
    }
    std::sort(phi.begin(), phi.end());

    std::vector<double> prefix(e + 1, 0.0);
    for (std::size_t k = 0; k < e; ++k) {
        prefix[k + 1] = prefix[k] + phi[k];
    }

    double sum = 0.0;
    for (std::size_t k = 1; k < e; ++k) {
        const double pk = phi[k];
        const auto lo = static_cast<std::size_t>(
            std::lower_bound(phi.begin(), phi.begin() + static_cast<std::ptrdiff_t>(k), pk - half) -
            phi.begin());
        const double near_count = static_cast<double>(k - lo);
        const double far_count = static_cast<double>(lo);
        sum += near_count * pk - (prefix[k] - prefix[lo]);
        sum += far_count * (period - pk) + prefix[lo];
    }

    const double denom = static_cast<double>(e) * static_cast<double>(e) - 2.0 * static_cast<double>(e);
    const double theta_err = 2.0 * sum / denom;
    return std::clamp((L / std::numbers::pi) * theta_err, 0.0, 1.0);
}

double compactness_from_degrees(std::span<const std::size_t> degrees, int L) {
    if (degrees.empty()) {
        throw UsageError("compactness needs at least one agent");
    }
    double sum = 0.0;
    for (std::size_t d : degrees) {
        sum += std::abs(static_cast<double>(d) - L) / L;
    }
    return sum / static_cast<double>(degrees.size());
}

double compactness(const SwarmState& state, const GeometryParams& params, int L) {
    return compactness_from_degrees(link_degrees(build_links(state, params), state.size()), L);
}

SteadyStateDetector::SteadyStateDetector(const MetricsConfig& config)
    : window_(config.window_steps()),
      tol_theta_(0.1 * config.e_theta_star),
      tol_L_(0.1 * config.e_L_star) {}

bool SteadyStateDetector::Window::steady(std::size_t k, double value, double tol,
                                         std::size_t window) const {
    if (k < window || max_q.empty()) {
        return false;
    }
    return max_q.front().second - value <= tol && value - min_q.front().second <= tol;
}

void SteadyStateDetector::Window::insert(std::size_t k, double value, std::size_t window) {
    while (!max_q.empty() && max_q.back().second <= value) {
        max_q.pop_back();
    }
    max_q.emplace_back(k, value);
    while (!min_q.empty() && min_q.back().second >= value) {
        min_q.pop_back();
    }
    min_q.emplace_back(k, value);
    // Keep indices [k + 1 - window, k] for the next sample.
    const std::size_t oldest = k + 1 >= window ? k + 1 - window : 0;
    while (max_q.front().first < oldest) {
        max_q.pop_front();
    }
    while (min_q.front().first < oldest) {
        min_q.pop_front();
    }
}

bool SteadyStateDetector::push(double e_theta, double e_L) {
    const std::size_t k = count_++;
    const bool ok = theta_.steady(k, e_theta, tol_theta_, window_) &&
                    link_.steady(k, e_L, tol_L_, window_);
    theta_.insert(k, e_theta, window_);
    link_.insert(k, e_L, window_);
    return ok;
}

SteadyState steady_state_scan(std::span<const TraceRecord> trace, const MetricsConfig& config) {
    SteadyState out;
    if (trace.empty()) {
        return out;
    }
    SteadyStateDetector detector(config);
    for (std::size_t k = 0; k < trace.size(); ++k) {
        if (detector.push(trace[k].e_theta, trace[k].e_L)) {
            out.index = k;
            out.t_ss = trace[k].t;
            out.e_theta_ss = trace[k].e_theta;
            out.e_L_ss = trace[k].e_L;
            return out;
        }
    }
    out.e_theta_ss = trace.back().e_theta;
    out.e_L_ss = trace.back().e_L;
    return out;
}

namespace {

template <typename Get>
std::optional<double> settle_time(std::span<const TraceRecord> trace, double threshold, Get get) {
    if (trace.empty() || get(trace.back()) > threshold) {
        return std::nullopt;
    }
    std::size_t k = trace.size() - 1;
    while (k > 0 && get(trace[k - 1]) <= threshold) {
        --k;
    }
    return trace[k].t;
}

}  // namespace

ConvergenceTimes convergence_times(std::span<const TraceRecord> trace, const MetricsConfig& config) {
    return {settle_time(trace, config.e_theta_star, [](const TraceRecord& r) { return r.e_theta; }),
            settle_time(trace, config.e_L_star, [](const TraceRecord& r) { return r.e_L; })};
}

bool success(const SteadyState& steady, const MetricsConfig& config) {
    return steady.t_ss.has_value() && steady.e_theta_ss < config.e_theta_star &&
           steady.e_L_ss < config.e_L_star;
}

double tuning_cost(double e_theta_ss, double e_L_ss, const MetricsConfig& config) {
    const double a = e_theta_ss / config.e_theta_star;
    const double b = e_L_ss / config.e_L_star;
    return a * a + b * b;
}

void finalize(MetricsTrace& trace, const MetricsConfig& config) {
    trace.steady = steady_state_scan(trace.records, config);
    trace.convergence = convergence_times(trace.records, config);
    trace.success = success(trace.steady, config);
}

std::vector<PhaseSummary> phase_summaries(std::span<const TraceRecord> trace,
                                          std::span<const double> boundaries,
                                          const MetricsConfig& config) {
    std::vector<PhaseSummary> phases;
    if (trace.empty()) {
        return phases;
    }
    const double half_dt = config.dt / 2.0;
    std::size_t begin = 0;
    auto emit = [&](std::size_t end) {
        if (end <= begin) {
            return;
        }
        auto seg = trace.subspan(begin, end - begin);
        PhaseSummary p;
        p.t_start = seg.front().t;
        p.t_end = seg.back().t;
        p.steady = steady_state_scan(seg, config);
        p.success = success(p.steady, config);
        auto ct = convergence_times(seg, config);
        if (ct.T_theta) {
            ct.T_theta = *ct.T_theta - p.t_start;
        }
        if (ct.T_L) {
            ct.T_L = *ct.T_L - p.t_start;
        }
        p.convergence = ct;
        phases.push_back(p);
        begin = end;
    };
    for (double b : boundaries) {
        std::size_t end = begin;
        while (end < trace.size() && trace[end].t < b - half_dt) {
            ++end;
        }
        emit(end);
    }
    emit(trace.size());
    return phases;
}

}  // namespace swarmform

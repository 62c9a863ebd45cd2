#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "swarmform/geometry.hpp"

namespace swarmform {

struct MetricsConfig {
    double e_theta_star{0.2};
    double e_L_star{0.3};
    double T_w{10.0};
    double dt{0.01};
    double t_max{200.0};

    void validate() const;

    /// floor(T_w / dt), tolerant to representation error in the quotient.
    std::size_t window_steps() const;

    bool operator==(const MetricsConfig&) const = default;
};

/// One sample of the metric trace (one per integration step).
struct TraceRecord {
    double t{0.0};
    double e_theta{0.0};
    double e_L{0.0};
    double G_n_mean{0.0};
    double G_n_min{0.0};
    double G_n_max{0.0};
    std::size_t num_links{0};
    std::size_t num_agents{0};

    bool operator==(const TraceRecord&) const = default;
};

struct SteadyState {
    std::optional<std::size_t> index;  ///< record index of t_ss
    std::optional<double> t_ss;
    double e_theta_ss{1.0};
    double e_L_ss{1.0};
};

struct ConvergenceTimes {
    std::optional<double> T_theta;
    std::optional<double> T_L;
};

/// Time series plus the derived steady-state and timing statistics.
struct MetricsTrace {
    std::vector<TraceRecord> records;
    SteadyState steady;
    ConvergenceTimes convergence;
    bool success{false};
};

/// Regularity e_theta in [0, 1]. Returns 1 when |E| <= 2.
///
/// The pair error min_q |theta_ij^hk - q 2pi/L| equals the circular distance
/// between the two link angles reduced modulo 2pi/L, so the double sum is the
/// sum of pairwise circular distances and is evaluated in O(|E| log |E|) after
/// sorting. The excluded self and reverse pairs contribute exactly zero error
/// (pi is a multiple of 2pi/L), so only the normalisation sees them.
double regularity(const LinkSet& links, int L, double orientation_offset);

/// Compactness e_L = (1/N) sum_i ||A_i| - L| / L.
double compactness(const SwarmState& state, const GeometryParams& params, int L);
double compactness_from_degrees(std::span<const std::size_t> degrees, int L);

/// Earliest index at which both metrics have held within 10% of their
/// thresholds over the trailing window. Falls back to the last record.
SteadyState steady_state_scan(std::span<const TraceRecord> trace, const MetricsConfig& config);

/// Times (taken from the records) after which each metric stays at or below its threshold.
ConvergenceTimes convergence_times(std::span<const TraceRecord> trace, const MetricsConfig& config);

bool success(const SteadyState& steady, const MetricsConfig& config);

double tuning_cost(double e_theta_ss, double e_L_ss, const MetricsConfig& config);

/// Fills steady, convergence and success from records.
void finalize(MetricsTrace& trace, const MetricsConfig& config);

/// Streaming form of the steady-state test; push one sample per step.
class SteadyStateDetector {
public:
    explicit SteadyStateDetector(const MetricsConfig& config);

    /// Returns true when the sample just pushed is at steady state for both metrics.
    bool push(double e_theta, double e_L);

    std::size_t samples() const { return count_; }

private:
    struct Window {
        std::deque<std::pair<std::size_t, double>> max_q;
        std::deque<std::pair<std::size_t, double>> min_q;
        bool steady(std::size_t k, double value, double tol, std::size_t window) const;
        void insert(std::size_t k, double value, std::size_t window);
    };

    std::size_t window_;
    double tol_theta_;
    double tol_L_;
    std::size_t count_{0};
    Window theta_;
    Window link_;
};

/// Statistics of one trace segment between consecutive events.
struct PhaseSummary {
    double t_start{0.0};
    double t_end{0.0};
    SteadyState steady;
    ConvergenceTimes convergence;  ///< relative to t_start
    bool success{false};
};

/// Splits the trace at `boundaries` (event times) and summarises each segment.
std::vector<PhaseSummary> phase_summaries(std::span<const TraceRecord> trace,
                                          std::span<const double> boundaries,
                                          const MetricsConfig& config);

}  // namespace swarmform

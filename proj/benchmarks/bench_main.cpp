#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "swarmform/metrics.hpp"
#include "swarmform/rng.hpp"
#include "swarmform/simulation.hpp"

using namespace swarmform;

namespace {

ScenarioSpec spec_for(std::size_t n, Controller controller) {
    ScenarioSpec spec;
    spec.N = n;
    spec.disk_radius = std::sqrt(static_cast<double>(n) / 25.0);
    spec.controller = controller;
    return spec;
}

// Partially formed swarm: a few hundred steps past the random start.
SimState warm_state(const ScenarioSpec& spec) {
    auto s = initial_state(spec);
    Engine noise(1);
    for (int k = 0; k < 300; ++k) {
        s = step(s, spec, noise);
    }
    return s;
}

// Reference O(E^2) regularity over all ordered link pairs.
double naive_regularity(const LinkSet& links, int L) {
    const double period = kTwoPi / L;
    const std::size_t e = links.size();
    double sum = 0.0;
    for (std::size_t a = 0; a < e; ++a) {
        for (std::size_t b = 0; b < e; ++b) {
            if (a == b) {
                continue;
            }
            const double d = std::fabs(std::remainder(links.links[a].angle - links.links[b].angle, period));
            sum += d;
        }
    }
    const double n = static_cast<double>(e);
    return (L / std::numbers::pi) * sum / (n * n - 2.0 * n);
}

void BM_Evaluate(benchmark::State& st) {
    const auto spec = spec_for(static_cast<std::size_t>(st.range(0)), Controller::MainStatic);
    const auto s = warm_state(spec);
    for (auto _ : st) {
        benchmark::DoNotOptimize(evaluate(s, spec));
    }
}
BENCHMARK(BM_Evaluate)->Arg(100)->Arg(200)->Arg(400);

void BM_Step(benchmark::State& st) {
    const auto spec = spec_for(static_cast<std::size_t>(st.range(0)), Controller::MainAdaptive);
    auto s = warm_state(spec);
    Engine noise(2);
    for (auto _ : st) {
        s = step(s, spec, noise);
    }
}
BENCHMARK(BM_Step)->Arg(100)->Arg(200);

void BM_StepBaseline(benchmark::State& st) {
    const auto spec = spec_for(static_cast<std::size_t>(st.range(0)), Controller::Baseline);
    auto s = warm_state(spec);
    Engine noise(2);
    for (auto _ : st) {
        s = step(s, spec, noise);
    }
}
BENCHMARK(BM_StepBaseline)->Arg(100)->Arg(200);

void BM_BuildLinks(benchmark::State& st) {
    const auto spec = spec_for(static_cast<std::size_t>(st.range(0)), Controller::MainStatic);
    const auto s = warm_state(spec);
    for (auto _ : st) {
        benchmark::DoNotOptimize(build_links(s.swarm, spec.geometry));
    }
}
BENCHMARK(BM_BuildLinks)->Arg(100)->Arg(200)->Arg(400);

void BM_RegularityFast(benchmark::State& st) {
    const auto spec = spec_for(static_cast<std::size_t>(st.range(0)), Controller::MainStatic);
    const auto links = build_links(warm_state(spec).swarm, spec.geometry);
    for (auto _ : st) {
        benchmark::DoNotOptimize(regularity(links, 4, 0.0));
    }
    st.counters["links"] = static_cast<double>(links.size());
}
BENCHMARK(BM_RegularityFast)->Arg(100)->Arg(200)->Arg(400);

void BM_RegularityNaive(benchmark::State& st) {
    const auto spec = spec_for(static_cast<std::size_t>(st.range(0)), Controller::MainStatic);
    const auto links = build_links(warm_state(spec).swarm, spec.geometry);
    for (auto _ : st) {
        benchmark::DoNotOptimize(naive_regularity(links, 4));
    }
    st.counters["links"] = static_cast<double>(links.size());
}
BENCHMARK(BM_RegularityNaive)->Arg(100)->Arg(200);

void BM_SteadyStateDetector(benchmark::State& st) {
    MetricsConfig cfg;
    for (auto _ : st) {
        SteadyStateDetector det(cfg);
        bool any = false;
        for (int k = 0; k < 20000; ++k) {
            any |= det.push(0.1 + 0.001 * std::sin(k * 0.01), 0.2);
        }
        benchmark::DoNotOptimize(any);
    }
}
BENCHMARK(BM_SteadyStateDetector);

}  // namespace

BENCHMARK_MAIN();

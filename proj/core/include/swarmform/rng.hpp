#pragma once

// Reproducible randomness. Every trial owns a 64-bit seed; independent
// streams (initial positions, noise, removals, spins) are derived from it with
// a SplitMix64 mix and drive std::mt19937_64 engines. Distributions come from
// Boost.Random, whose algorithms are fixed across platforms and standard
// libraries (unlike <random>'s distributions).

#include <cstdint>
#include <random>

namespace swarmform {

using Engine = std::mt19937_64;

enum class Stream : std::uint64_t {
    InitialPositions = 1,
    Noise = 2,
    Removals = 3,
    Spins = 4,
};

/// SplitMix64 finaliser.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(a) ^ (b + 0x632be59bd9b4e019ULL));
}

/// Seed for trial `trial` of grid cell `cell` under `master`.
constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t trial) {
    return mix_seed(mix_seed(master, cell), trial);
}

inline Engine make_stream(std::uint64_t seed, Stream s) {
    return Engine{mix_seed(seed, static_cast<std::uint64_t>(s))};
}

double uniform01(Engine& eng);
double standard_normal(Engine& eng);

}  // namespace swarmform

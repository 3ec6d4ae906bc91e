#pragma once

#include <cstdint>
#include <random>

namespace mgdens {

// SplitMix64 finalizer. Mixing (seed, n, rep) through this gives every
// replication an independent stream, so execution order cannot change
// results.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t rep) {
    return mix64(seed ^ mix64(n ^ mix64(rep)));
}

// Uniform double in [0, 1) built from the top 53 bits. mt19937_64 is fully
// specified by the standard, so streams reproduce across platforms.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace mgdens

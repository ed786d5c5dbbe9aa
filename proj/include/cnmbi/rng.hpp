#pragma once

#include <cstdint>
#include <random>

namespace cnmbi {

// splitmix64 step; used to derive independent substreams from one user seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic substream seed from (seed, a, b). Streams for distinct
// (a, b) are uncorrelated for practical purposes.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t z = splitmix64(seed ^ (0x517cc1b727220a95ULL + a));
    z = splitmix64(z ^ (0x2545f4914f6cdd1dULL + b));
    return z;
}

inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return std::mt19937_64(mix_seed(seed, a, b));
}

} // namespace cnmbi

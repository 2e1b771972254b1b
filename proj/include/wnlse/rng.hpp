#pragma once

#include <cstdint>
#include <random>

namespace wnlse {

// SplitMix64 mixer; used to derive independent substream seeds from (seed, stream).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
}

// Deterministic engine for a given (seed, stream) pair. Streams partition a
// sample budget into chunks whose results combine independently of how the
// chunks are scheduled.
inline std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream = 0) {
    return std::mt19937_64(derive_stream_seed(seed, stream));
}

}  // namespace wnlse

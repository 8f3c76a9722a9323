#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace persuasion::detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Independent deterministic substream for (seed, stream). Both words fed to
// the seed sequence are unique per stream, so substreams never share state.
inline std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t stream_state = stream;
    std::uint64_t state = seed ^ splitmix64(stream_state);
    const std::uint64_t a = splitmix64(state);
    const std::uint64_t b = splitmix64(state);
    std::seed_seq seq{std::uint32_t(a), std::uint32_t(a >> 32), std::uint32_t(b),
                      std::uint32_t(b >> 32)};
    return std::mt19937_64(seq);
}

// Uniform draw in [0, 1) from the top 53 bits. Unlike the standard
// distributions this is pinned to exact bit manipulation, so simulated
// results replay identically everywhere.
inline double canonical_double(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * canonical_double(rng);
}

// Inverse-CDF draw from a probability vector. Zero entries are skipped, so a
// zero-probability index is never returned while any mass remains.
inline std::size_t sample_index(const std::vector<double>& probs, double u) {
    double cum = 0.0;
    std::size_t last_positive = 0;
    bool seen = false;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] <= 0.0) {
            continue;
        }
        last_positive = i;
        seen = true;
        cum += probs[i];
        if (u < cum) {
            return i;
        }
    }
    return seen ? last_positive : 0;
}

} // namespace persuasion::detail

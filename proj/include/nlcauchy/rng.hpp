#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace nlcauchy {

/// splitmix64 step; the backbone of seed derivation.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derive an independent substream seed from a parent seed, a stream tag and
/// an index. Streams are non-overlapping by construction: every (tag, index)
/// pair hashes to a distinct xoshiro-grade seed.
inline uint64_t substream_seed(uint64_t parent, std::string_view tag, uint64_t index = 0) {
    uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the tag
    for (char c : tag) {
        h ^= uint64_t(uint8_t(c));
        h *= 0x100000001b3ULL;
    }
    uint64_t state = parent ^ h;
    splitmix64(state);
    state += index * 0x9e3779b97f4a7c15ULL;
    return splitmix64(state);
}

/// Deterministic generator with samplers that do not depend on the standard
/// library's distribution implementations (bit-identical across toolchains).
class RngStream {
public:
    explicit RngStream(uint64_t seed) : state_(seed) {
        // Decorrelate trivially related seeds.
        for (int i = 0; i < 4; ++i) splitmix64(state_);
    }

    uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform in (0,1); never returns 0 or 1.
    double uniform() {
        return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double exponential() { return -std::log(uniform()); }

    /// Box-Muller; one value per call (the spare is discarded to keep the
    /// stream position independent of call parity).
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    uint64_t state_;
};

}  // namespace nlcauchy

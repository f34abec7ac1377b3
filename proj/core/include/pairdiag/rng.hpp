#pragma once

#include <cstdint>
#include <initializer_list>

// =============================================================================
// Seedable, portable random streams.
//
// SplitMix64 core with inverse-CDF transforms only, so every draw is
// bit-identical across platforms and standard-library versions (libstdc++
// distributions are not). Independent task streams are derived from
// (master seed, tag...) so parallel or reordered execution cannot change
// any aggregate result.
// =============================================================================

namespace pairdiag {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on the open interval (0,1); safe to feed normal_quantile.
    double u01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Uniform index in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) {
        // 128-bit multiply rejection-free reduction (bias < 2^-64, irrelevant here).
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    bool bernoulli(double p) { return u01() < p; }

    // Standard normal via inverse CDF.
    double normal();

private:
    std::uint64_t state_;
};

// Derive an independent stream from a master seed and tags (cell index,
// trial index, purpose id). Mixing is a few SplitMix64 rounds per tag.
Rng derive_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

} // namespace pairdiag

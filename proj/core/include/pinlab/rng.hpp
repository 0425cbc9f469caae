#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace pinlab {

// Counter-based SplitMix64: one 64-bit state advanced by a fixed odd
// increment, output whitened by a finalizer. Distinct (seed, stream) pairs
// are scattered through the state space by double-hashing the seed, so the
// arithmetic progressions of different streams do not overlap in practice.
class rng {
public:
    explicit rng(uint64_t seed, uint64_t stream = 0)
        : x_(mix(mix(seed) ^ mix(stream * 0xD1342543DE82EF95ULL + 1))) {}

    uint64_t next_u64() {
        uint64_t z = (x_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on (0,1) with 53 random bits, never exactly 0 or 1.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54; }

    // Standard normal via Box-Muller; the sine partner is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double r = std::sqrt(-2.0 * std::log(uniform()));
        double t = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    uint64_t x_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace pinlab

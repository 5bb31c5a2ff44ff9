#pragma once

#include <cmath>
#include <cstdint>

namespace progx {

// Deterministic, platform-independent random source (xoshiro256**, seeded
// through splitmix64). Standard-library distributions are implementation
// defined, so bounded integers and Gaussians are generated here by hand.
class RandomEngine {
public:
    explicit RandomEngine(uint64_t seed = 0) { reseed(seed); }

    void reseed(uint64_t seed) {
        uint64_t x = seed;
        for (auto& w : state_) w = splitmix64(x);
        gauss_valid_ = false;
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform integer in [0, bound), bound > 0. Rejection keeps it unbiased.
    uint64_t next_below(uint64_t bound) {
        const uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Standard normal via Box-Muller; the second deviate is cached.
    double next_gaussian() {
        if (gauss_valid_) {
            gauss_valid_ = false;
            return gauss_cache_;
        }
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        constexpr double two_pi = 6.283185307179586476925286766559;
        gauss_cache_ = r * std::sin(two_pi * u2);
        gauss_valid_ = true;
        return r * std::cos(two_pi * u2);
    }

    // Independent child stream, e.g. one per benchmark repetition.
    RandomEngine fork(uint64_t stream) {
        uint64_t x = next_u64() ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
        return RandomEngine(splitmix64(x));
    }

private:
    static uint64_t splitmix64(uint64_t& x) {
        uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t state_[4] = {};
    double gauss_cache_ = 0.0;
    bool gauss_valid_ = false;
};

}  // namespace progx

#pragma once

#include <cstdint>

namespace korolat {

// Counter-based pseudo-random streams built on the splitmix64 finalizer.
// Every drawing site derives its own stream from (master_seed, stream_index),
// so campaigns reproduce bit-identically regardless of execution order.

inline std::uint64_t splitmix64_mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Rng {
    std::uint64_t state;

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased draw from {0, ..., n-1} by rejection.
    std::uint64_t uniform_below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n; // 2^64 mod n
        std::uint64_t x;
        do {
            x = next();
        } while (x < threshold);
        return x % n;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform_real() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
};

inline Rng make_stream(std::uint64_t master_seed, std::uint64_t stream_index) {
    return Rng{splitmix64_mix(master_seed ^ splitmix64_mix(stream_index))};
}

} // namespace korolat

#pragma once

#include <cstddef>
#include <cstdint>

namespace curvetk {

// Deterministic 64-bit generator (splitmix64). Used everywhere randomness is
// needed so that runs are reproducible across platforms and worker counts.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound), bound > 0. Lemire multiply-shift with rejection.
    uint64_t below(uint64_t bound) {
        for (;;) {
            uint64_t x = next();
            __uint128_t m = static_cast<__uint128_t>(x) * bound;
            uint64_t lo = static_cast<uint64_t>(m);
            if (lo < bound) {
                uint64_t threshold = (0 - bound) % bound;
                if (lo < threshold) continue;
            }
            return static_cast<uint64_t>(m >> 64);
        }
    }
};

// Seed derivation for independent streams: stream i of a master seed.
inline uint64_t derive_seed(uint64_t master, uint64_t index) {
    Rng r(master ^ (0x517cc1b727220a95ULL * (index + 1)));
    r.next();
    return r.next();
}

inline uint64_t hash_bytes(const void* data, size_t len, uint64_t seed = 0xcbf29ce484222325ULL) {
    const unsigned char* b = static_cast<const unsigned char*>(data);
    uint64_t h = seed;
    for (size_t i = 0; i < len; ++i) {
        h ^= b[i];
        h *= 0x100000001b3ULL;
    }
    h ^= h >> 32;
    return h;
}

}  // namespace curvetk

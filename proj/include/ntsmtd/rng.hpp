// rng.hpp - deterministic seedable random source and stable seed derivation.
// All distributions are implemented on top of raw 64-bit draws so that the
// stream is identical across standard library implementations.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace ntsmtd {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // uniform in [0, 1) with 53 bits of resolution
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, n), n >= 1; rejection sampling keeps it unbiased
    std::uint64_t uniform_int(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // exponential with the given mean (= 1/rate); strictly positive
    double exponential_mean(double mean) {
        double u;
        do {
            u = uniform01();
        } while (u <= 0.0);
        return -mean * std::log(u);
    }

private:
    std::mt19937_64 gen_;
};

// FNV-1a over bytes, used for stable cross-platform seed derivation.
inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64_u64(std::uint64_t v, std::uint64_t h) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xffULL;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Stable per-run seed: hash of (master seed, scheme label, sweep label, run index).
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view scheme,
                                 std::string_view sweep_point, std::uint64_t run_index) {
    std::uint64_t h = fnv1a64(scheme);
    h = fnv1a64("|", h);
    h = fnv1a64(sweep_point, h);
    h = fnv1a64_u64(master, h);
    h = fnv1a64_u64(run_index, h);
    return splitmix64(h);
}

} // namespace ntsmtd

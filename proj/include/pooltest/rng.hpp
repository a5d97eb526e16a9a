#pragma once

#include <cstdint>

namespace pooltest {

/// 64-bit finalizer (splitmix-style avalanche).
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

/// Counter-based generator: output i of stream (seed, stream) is a keyed hash
/// of the counter, so any draw is addressable without sequencing and distinct
/// streams are unrelated. One stream per Monte Carlo trial keeps parallel
/// execution bit-reproducible.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix64(seed ^ mix64(stream ^ 0x6a09e667f3bcc909ULL))) {}

    std::uint64_t next() {
        return mix64(key_ ^ mix64(counter_++ + 0x9e3779b97f4a7c15ULL));
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Threshold for "next() < threshold" Bernoulli sampling with probability p.
inline std::uint64_t bernoulli_threshold(double p) {
    if (p <= 0.0) {
        return 0;
    }
    if (p >= 1.0) {
        return ~std::uint64_t{0};
    }
    return static_cast<std::uint64_t>(static_cast<long double>(p) * 0x1.0p64L);
}

}  // namespace pooltest

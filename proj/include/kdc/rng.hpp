// Counter-based seeded random numbers (SplitMix64 finalizer in counter mode).
//
// Draw i is a pure function of (seed, i), so streams can be replayed or
// split without shared state. Cross-implementation matches are expected at
// the statistical level only; tests never rely on bitwise equality across
// languages.
#pragma once

#include <cstdint>

namespace kdc {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Per-trial seed derivation; order of arguments matters.
inline std::uint64_t seed_mix(std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(a) ^ (b + 0x9E3779B97F4A7C15ULL));
}

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return splitmix64(seed_ + counter_++); }

    // Uniform in [0,1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

} // namespace kdc

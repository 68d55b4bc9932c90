#pragma once

#include <cstdint>

namespace phantom {

// Deterministic 64-bit generator (splitmix64). Every seeded source in the
// project goes through this class so results never depend on the platform's
// <random> distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [0, n). n must be > 0.
    std::uint64_t next_below(std::uint64_t n) {
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold)
                return r % n;
        }
    }

    // Inclusive bounds.
    int next_int(int lo, int hi) {
        return lo + static_cast<int>(next_below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool next_bool() { return (next_u64() & 1ull) != 0; }

    // Derive an independent child seed from a parent seed and an index.
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        Rng r(a ^ (b * 0x9e3779b97f4a7c15ull + 0x7f4a7c15u));
        r.next_u64();
        return r.next_u64();
    }

private:
    std::uint64_t state_;
};

} // namespace phantom

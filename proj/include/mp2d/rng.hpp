#pragma once

#include <array>
#include <cstdint>

namespace mp2d {

// Deterministic random source. Dataset generation must be byte-reproducible
// across platforms and across worker counts, so we avoid <random>
// distributions (their algorithms are implementation-defined) and pin both
// the generator (xoshiro256**) and the bounded-draw scheme here.

/// splitmix64 step: advances `state` and returns the next mixed value.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Per-dialogue seed: derived_seed = splitmix64(seed + gamma * (ordinal + 1)).
/// Makes each dialogue's stream a pure function of (run seed, ordinal),
/// independent of worker scheduling.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t ordinal) {
    std::uint64_t s = seed + 0x9E3779B97F4A7C15ULL * (ordinal + 1);
    return splitmix64(s);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& word : state_) word = splitmix64(s);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Unbiased draw from [0, bound). bound must be >= 1.
    std::uint64_t uniform_below(std::uint64_t bound) {
        const std::uint64_t threshold = (~bound + 1) % bound;
        for (;;) {
            const std::uint64_t x = next_u64();
            if (x >= threshold) return x % bound;
        }
    }

    /// Inclusive draw from [lo, hi].
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(uniform_below(
                        static_cast<std::uint64_t>(hi - lo) + 1));
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

} // namespace mp2d

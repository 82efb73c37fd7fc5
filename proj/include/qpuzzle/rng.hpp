// Seedable, splittable random generator with platform-independent draws.
#pragma once

#include "qpuzzle/core.hpp"

#include <cstdint>
#include <random>

namespace qpuzzle {

/// Wraps mt19937_64. Uniform draws are computed from raw 64-bit output so
/// a given seed produces the same sequence with every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : seed_(seed), engine_(splitmix64(seed)) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform real in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [lo, hi] (inclusive), unbiased by rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (hi < lo) throw InvalidArgument("uniform_int: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(engine_());
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return lo + static_cast<std::int64_t>(x % span);
    }

    /// Independent child stream; depends only on (seed, stream), never on
    /// how many values this generator has produced.
    Rng split(std::uint64_t stream) const { return Rng(derive_seed(seed_, stream)); }

    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
        return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace qpuzzle

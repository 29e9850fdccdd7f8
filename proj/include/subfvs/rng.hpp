#pragma once

#include <cstdint>
#include <random>

namespace subfvs {

// All generated corpora use MT19937-64 seeded directly with the user seed.
// Bounded draws go through rejection sampling below instead of
// std::uniform_int_distribution, whose output differs between standard
// library implementations.
using Rng = std::mt19937_64;

/// Uniform draw from [0, n) that is reproducible across platforms.
inline std::uint64_t rand_below(Rng& rng, std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

/// Uniform draw from [lo, hi] inclusive.
inline std::int64_t rand_range(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rand_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

/// Bernoulli draw with probability p.
inline bool rand_chance(Rng& rng, double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    // 53-bit mantissa comparison keeps the draw deterministic
    const double x = static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
    return x < p;
}

} // namespace subfvs

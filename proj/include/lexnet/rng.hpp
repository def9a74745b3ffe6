#ifndef LEXNET_RNG_HPP
#define LEXNET_RNG_HPP

#include <cstdint>

namespace lexnet {

// splitmix64 step; used for seeding and for deriving per-scope sub-seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Deterministic uniform random stream: xoshiro256** (period 2^256 - 1).
///
/// Bounded draws use multiply-with-rejection (Lemire), so every value in
/// [0, bound) is exactly equally likely; plain modulo reduction is never used.
/// A stream seeded with the same value produces the same sequence on every
/// platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next() {
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

    /// Uniform draw from [0, bound). bound must be nonzero.
    std::uint64_t next_below(std::uint64_t bound) {
        // Lemire's method: accept iff the low half of x*bound clears the
        // rejection threshold 2^64 mod bound.
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Uniform double in [0, 1).
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

/// Derives an independent sub-seed for a tagged scope (e.g. document d,
/// sentence s). Same (master, tag, a, b) always yields the same sub-seed,
/// so scopes can be processed in any order or in parallel.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag,
                                 std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t s = master;
    std::uint64_t h = splitmix64(s);
    s = h ^ (tag * 0xD1B54A32D192ED03ULL);
    h = splitmix64(s);
    s = h ^ (a * 0x8CB92BA72F3D8DD7ULL);
    h = splitmix64(s);
    s = h ^ (b * 0xA24BAED4963EE407ULL);
    return splitmix64(s);
}

} // namespace lexnet

#endif

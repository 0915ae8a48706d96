#ifndef EHRELAY_RNG_HPP
#define EHRELAY_RNG_HPP

#include <array>
#include <cstdint>

namespace ehrelay {

// splitmix64 step: advances `state` and returns a mixed 64-bit value.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Derives a decorrelated sub-seed from (seed, salt). Used for per-point and
// per-batch stream splitting so results do not depend on scheduling.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t state = seed ^ (0xA0761D6478BD642FULL + salt * 0x9E3779B97F4A7C15ULL);
    std::uint64_t z = splitmix64_next(state);
    return z ^ splitmix64_next(state);
}

// Counter-seeded xoshiro256++ stream. Identical (seed, stream) gives an
// identical u64 sequence on every platform; the float transforms below only
// depend on libm for log1p.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t st = mix_seed(seed, stream);
        for (auto& w : s_) w = splitmix64_next(st);
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 0x9E3779B97F4A7C15ULL;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Inverse-CDF exponential draw with the given mean.
    double exponential(double mean);

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::array<std::uint64_t, 4> s_;
};

}  // namespace ehrelay

#endif

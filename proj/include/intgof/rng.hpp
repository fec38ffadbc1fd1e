#ifndef INTGOF_RNG_HPP
#define INTGOF_RNG_HPP

#include <cstdint>

namespace intgof {

/// Deterministic, platform-independent random stream (xoshiro256++ seeded
/// through SplitMix64). Streams are addressed by (root seed, stream index):
/// stream k of a simulation with root seed s is RngStream(s, k), so k can
/// be a replicate counter and parallel runs reproduce serial ones bit for
/// bit regardless of worker count.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t x = seed;
        x = mix(x) ^ mix(stream + 0x9E3779B97F4A7C15ULL);
        for (auto& w : state_) {
            x += 0x9E3779B97F4A7C15ULL;
            w = mix(x);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double strictly inside (0, 1), 53-bit resolution.
    double next_open01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_[4];
};

} // namespace intgof

#endif

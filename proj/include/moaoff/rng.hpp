#pragma once

#include <cstdint>

namespace moaoff {

/// splitmix64: 64-bit state, one multiply-xor-shift avalanche per draw.
/// Chosen for the simulator because it is trivially portable (integer-only,
/// no implementation-defined behavior) and cheap to fork into independent
/// per-request streams.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 mantissa bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

/// Derives a child seed from (seed, a, b) by running the parent values
/// through the splitmix64 avalanche. Used to give every (request, task)
/// pair its own stream so routing choices never perturb other draws.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    SplitMix64 g(seed ^ (a * 0xD6E8FEB86659FD93ULL) ^ (b * 0xA3B195354A39B70DULL));
    return g.next();
}

} // namespace moaoff

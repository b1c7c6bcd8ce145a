#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace grfkit {

/// PCG32 (pcg_setseq_64_xsh_rr_32): 64-bit LCG state, XSH-RR output.
/// The field synthesis contract pins this generator, the fixed stream below,
/// and the draw order; changing any of them changes every generated image.
class Pcg32 {
public:
    static constexpr std::uint64_t kDefaultStream = 54u;

    explicit Pcg32(std::uint64_t seed, std::uint64_t stream = kDefaultStream) {
        state_ = 0u;
        inc_ = (stream << 1u) | 1u;
        next_u32();
        state_ += seed;
        next_u32();
    }

    std::uint32_t next_u32() {
        std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        auto rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
    }

    /// Uniform double in [0,1) from the top 53 bits of two 32-bit draws (high word first).
    double next_double() {
        std::uint64_t hi = next_u32();
        std::uint64_t lo = next_u32();
        return static_cast<double>(((hi << 32u) | lo) >> 11u) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
    std::uint64_t inc_;
};

/// One accepted Box-Muller polar step: returns two independent standard normals.
inline std::pair<double, double> gaussian_pair(Pcg32& rng) {
    for (;;) {
        double u = 2.0 * rng.next_double() - 1.0;
        double v = 2.0 * rng.next_double() - 1.0;
        double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            double m = std::sqrt(-2.0 * std::log(s) / s);
            return {u * m, v * m};
        }
    }
}

} // namespace grfkit

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace cdasim {

// splitmix64 output function. Bijective on 64-bit integers.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ull;

// Seed for run `index` of an ensemble: output `index` of the splitmix64
// sequence started at `base`. The increment is odd and mix64 is a bijection,
// so seeds are pairwise distinct for any index range below 2^64.
constexpr std::uint64_t derive_run_seed(std::uint64_t base, std::uint64_t index) {
    return mix64(base + (index + 1) * kSplitMixGamma);
}

// Deterministic pseudo-random stream: xoshiro256++ with the state expanded
// from a 64-bit seed by splitmix64. Identical seeds give identical draw
// sequences on every platform; all floating-point draws are derived from the
// raw 64-bit output by the fixed transforms below, never by std:: library
// distributions (which are implementation-defined).
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) {
            sm += kSplitMixGamma;
            word = mix64(sm);
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

    // Uniform double in [0, 1), 53 significant bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Exponential waiting time with the given rate; strictly positive.
    // Uses a bin-centred uniform on (0, 1) so log() never sees 0 or 1.
    double next_exponential(double rate) {
        if (!(rate > 0.0)) {
            throw std::invalid_argument("exponential rate must be positive");
        }
        const double u = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
        return -std::log(u) / rate;
    }

    // Uniform integer in [lo, hi], both inclusive. Fixed-point multiply-shift;
    // the selection bias of span/2^64 is far below statistical resolution.
    int next_int(int lo, int hi) {
        if (lo > hi) {
            throw std::invalid_argument("next_int: empty range");
        }
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t draw = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * span) >> 64);
        return lo + static_cast<int>(draw);
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_;
};

}  // namespace cdasim

#pragma once

#include <cstdint>
#include <vector>

namespace oa {

/// Pinned, platform-independent PRNG: xoshiro256** seeded with
/// SplitMix64. Sampling results must be bit-identical across runs and
/// platforms, so std::mt19937 + distributions are deliberately avoided.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) word = splitmix64(x);
    }

    std::uint64_t next() {
        auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
        std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0, bound) via multiply-shift with rejection (Lemire).
    std::uint64_t below(std::uint64_t bound) {
        while (true) {
            std::uint64_t x = next();
            __uint128_t m = static_cast<__uint128_t>(x) * bound;
            std::uint64_t low = static_cast<std::uint64_t>(m);
            if (low >= bound || low >= (0 - bound) % bound)
                return static_cast<std::uint64_t>(m >> 64);
        }
    }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_[4];
};

/// First n positions of a seeded Fisher-Yates shuffle of 0..size-1:
/// a uniform sample without replacement.
std::vector<std::size_t> sample_indices(std::size_t size, std::size_t n,
                                        std::uint64_t seed);

}  // namespace oa

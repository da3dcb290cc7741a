#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "prng.hpp"

namespace fixtures {

inline constexpr std::uint64_t kFixtureBits = 1'000'000;
inline constexpr std::uint64_t kMtSeed = 20261016;
inline constexpr std::string_view kMtFile = "mt19937_64.bin";
inline constexpr std::string_view kHybridHenonFile = "hybrid_henon.bin";
inline constexpr std::string_view kHybridHenonSeed =
    "9e3779b97f4a7c15f39cc0605cedc8341082276bf3a27251c2b2ae3d27d4eb4f";

// mt19937_64 output words, most significant bit first.
inline chaoscrypt::BitSequence mt_bits(std::uint64_t seed, std::uint64_t n_bits) {
    std::mt19937_64 rng(seed);
    chaoscrypt::BitSequence bits(n_bits);
    std::uint64_t word = 0;
    for (std::uint64_t i = 0; i < n_bits; ++i) {
        if (i % 64 == 0) word = rng();
        bits.set(i, (word >> (63 - i % 64)) & 1u);
    }
    return bits;
}

}  // namespace fixtures

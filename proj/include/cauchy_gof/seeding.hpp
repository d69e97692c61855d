#pragma once

#include <cstdint>

namespace cauchy_gof {

/// SplitMix64 finalizer: a bijective avalanche mix of 64 bits.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Mixes a master seed with two stream coordinates. Each input passes
/// through a full avalanche round before the next is folded in.
[[nodiscard]] constexpr std::uint64_t mix_seed(std::uint64_t master, std::uint64_t a,
                                               std::uint64_t b) noexcept {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ (b * 0xd6e8feb86659fd93ULL));
    return h;
}

}  // namespace cauchy_gof

// Random-number plumbing shared by every module. One mt19937_64 engine per
// run drives, in order: initial words, the sequential permutation (when
// randomized), schedule draws, and collapse draws. All bounded draws go
// through bounded() below; std::uniform_int_distribution is not portable
// across standard libraries and would break bit-exact reproduction.
#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace lexnet {

using Rng = std::mt19937_64;

// Uniform draw from [0, k). k <= 1 consumes no engine output; this keeps the
// general rule and the epsilon=0 membership rule on identical draw streams
// (a singleton candidate set needs no randomness).
inline std::uint64_t bounded(Rng& rng, std::uint64_t k) {
    if (k <= 1) return 0;
    const std::uint64_t mask = std::bit_ceil(k) - 1;
    for (;;) {
        const std::uint64_t v = rng() & mask;
        if (v < k) return v;
    }
}

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Per-trial seed derivation: a splitmix64 chain over the base seed and the
// trial's indices ((epsilon index, L index, trial index) for sweeps). Keeps
// trials statistically independent and the whole experiment a pure function
// of the base seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> indices) {
    std::uint64_t h = mix64(base);
    for (std::uint64_t i : indices) h = mix64(h ^ mix64(i));
    return h;
}

// Fisher-Yates with bounded() draws; std::shuffle is implementation-defined.
inline void shuffle(std::vector<std::uint32_t>& values, Rng& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(bounded(rng, i));
        std::swap(values[i - 1], values[j]);
    }
}

}  // namespace lexnet

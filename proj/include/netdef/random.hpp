#pragma once

#include <cstdint>
#include <random>

namespace netdef {

/// SplitMix64 finalizer; used for seed derivation and tie-break keys.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
    return mix64(mix64(master ^ mix64(stream)) + index);
}

// std::uniform_*_distribution are implementation-defined; these are not, so generated
// graphs are reproducible across standard libraries.
using Rng = std::mt19937_64;

inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace netdef

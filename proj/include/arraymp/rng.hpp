#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace arraymp {

/// splitmix64 finalizer; decorrelates nearby seed values.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives an independent RNG stream from a master seed and a path of
/// indices (cell, trial, stage, ...). Streams with distinct paths are
/// decorrelated, so parallel consumers never share generator state.
inline std::mt19937_64 make_stream(std::uint64_t master,
                                   std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = mix64(master);
    for (std::uint64_t p : path) s = mix64(s ^ mix64(p + 0x517cc1b727220a95ULL));
    return std::mt19937_64(s);
}

}  // namespace arraymp

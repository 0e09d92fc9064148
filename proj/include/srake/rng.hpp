#pragma once

#include <cstdint>
#include <random>

namespace srake {

using Rng = std::mt19937_64;

/// Named sub-streams derived from one master seed. Every realization gets its
/// own stream per purpose, so results do not depend on evaluation order.
enum class Stream : std::uint64_t {
  taps = 1,
  codes = 2,
  ga = 3,
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t realization, Stream stream,
                                    std::uint64_t salt = 0) {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ realization);
  h = mix64(h ^ static_cast<std::uint64_t>(stream));
  return mix64(h ^ salt);
}

inline Rng make_stream(std::uint64_t master, std::uint64_t realization, Stream stream,
                       std::uint64_t salt = 0) {
  return Rng(derive_seed(master, realization, stream, salt));
}

}  // namespace srake

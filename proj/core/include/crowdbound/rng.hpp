#pragma once

#include <cstdint>

// Counter-based uniform stream. Every draw is a pure function of (key, index),
// so any subset of a stream can be generated on any thread in any order and
// the results are bit-identical.

namespace crowdbound::rng {

/// SplitMix64 output permutation.
[[nodiscard]] constexpr std::uint64_t mix(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

/// Stateless substream derivation: hashes (key, index) into a new 64-bit key.
[[nodiscard]] constexpr std::uint64_t derive(std::uint64_t key, std::uint64_t index) noexcept {
  return mix(key + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

/// Uniform draw at position `index` of stream `key`, strictly inside (0, 1).
[[nodiscard]] constexpr double uniform01(std::uint64_t key, std::uint64_t index) noexcept {
  // 53 high bits, offset by half an ulp so 0 and 1 are never produced.
  return (static_cast<double>(derive(key, index) >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace crowdbound::rng

#pragma once

#include <cstdint>
#include <random>

namespace rws {

/// SplitMix64 finalizer; mixes a 64-bit key into a well-distributed word.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Stream purposes, so that e.g. the data of rep r and the CV splits of rep r
/// never share a generator.
enum class Stream : std::uint64_t {
  Data = 1,
  Structure = 2,
  Split = 3,
  Shuffle = 4,
  Test = 5,
};

/// Every random draw in the library comes from a std::mt19937_64 whose seed is
/// derived from (seed, stream, index) through SplitMix64. Streams are
/// independent of evaluation order, so results do not depend on thread count.
inline std::mt19937_64 make_rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0) {
  std::uint64_t key = splitmix64(seed);
  key = splitmix64(key ^ static_cast<std::uint64_t>(stream));
  key = splitmix64(key ^ index);
  std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

}  // namespace rws

#pragma once

#include <cstdint>

namespace hnfd::detail {

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// SplitMix64. Output is fully specified, so streams are reproducible across
/// platforms and standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  /// Independent stream for (seed, index); used so that sample i never
  /// depends on how the index range is partitioned between workers.
  static SplitMix64 for_index(std::uint64_t seed, std::uint64_t index) noexcept {
    const std::uint64_t key = mix64(seed + 0x9E3779B97F4A7C15ULL);
    return SplitMix64(mix64(key ^ mix64(index + 0x632BE59BD9B4E019ULL)));
  }

  std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  /// Uniform on [0, bound), bound >= 1 (Lemire's multiply-and-reject).
  std::uint64_t below(std::uint64_t bound) noexcept {
    unsigned __int128 prod = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(prod);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        prod = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<std::uint64_t>(prod);
      }
    }
    return static_cast<std::uint64_t>(prod >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace hnfd::detail

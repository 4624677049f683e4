#pragma once

#include <array>
#include <bit>
#include <cstdint>

namespace aoi {

/// splitmix64 finalizer. A bijection on 64-bit words, used for all seed
/// derivation so that distinct inputs never collide.
constexpr std::uint64_t avalanche(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

/// Seed of the k-th replica of an ensemble. Injective in k for a fixed master.
constexpr std::uint64_t mix_seed(std::uint64_t master, std::uint64_t k) noexcept {
  return avalanche(master + 0x9e3779b97f4a7c15ULL * (k + 1));
}

/// Seed of the per-link substream. Depends only on (seed, link), so adding a
/// link to a network leaves the draws of existing links untouched.
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t link) noexcept {
  return avalanche(seed ^ avalanche(link + 0x632be59bd9b4e019ULL));
}

/// Deterministic stream of 64-bit words and unit-interval doubles:
/// xoshiro256** (period 2^256 - 1) with its state expanded from the seed by
/// splitmix64. Everything is integer arithmetic plus one exact scaling, so a
/// seed yields the same uniforms on every platform.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) {
      x += 0x9e3779b97f4a7c15ULL;
      word = avalanche(x);
    }
  }

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; safe as a log() argument.
  double uniform_pos() noexcept { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> state_{};
};

}  // namespace aoi

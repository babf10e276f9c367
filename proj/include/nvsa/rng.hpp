#pragma once

// Counter-based deterministic RNG used for all codebook and dataset
// generation. Every draw is a pure function of (seed, stream, counter),
// so regeneration is bit-identical across runs and platforms.

#include <cstdint>
#include <numbers>
#include <string_view>

namespace nvsa {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

// SplitMix64 finalizer (Stafford mix13).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

// FNV-1a, used to derive per-codebook streams from their names.
constexpr std::uint64_t hash_str(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

constexpr std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ (b + kGolden + (a << 6) + (a >> 2)));
}

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(hash_combine(mix64(seed + kGolden), stream)) {}

  std::uint64_t at(std::uint64_t counter) const {
    return mix64(key_ + counter * kGolden);
  }

  // Sequential convenience draws.
  std::uint64_t next_u64() { return at(counter_++); }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform angle in (-pi, pi].
  double next_angle() {
    return std::numbers::pi - 2.0 * std::numbers::pi * next_unit();
  }

  // Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  bool next_bool() { return (next_u64() & 1ull) != 0; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace nvsa

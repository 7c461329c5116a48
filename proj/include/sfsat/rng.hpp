#pragma once

#include <cstdint>

namespace sfsat {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kStreamGamma = 0x9E3779B97F4A7C15ull;

// Derives an independent child key from (key, index). Used to give every
// clause, grid cell and trial its own stream, so results are pure functions
// of the seed and the indices, never of scheduling.
constexpr std::uint64_t derive_stream(std::uint64_t key, std::uint64_t index) {
  return mix64(key + kStreamGamma * (index + 1));
}

// Counter-based uniform stream: state advances by a fixed gamma and each
// output is the mixed counter, so the i-th draw is a pure function of
// (key, i).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : state_(key) {}

  std::uint64_t next_u64() {
    state_ += kStreamGamma;
    return mix64(state_);
  }

  // Uniform double in [0, 1), 53 significant bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool next_bool() { return (next_u64() >> 63) != 0; }

 private:
  std::uint64_t state_;
};

}  // namespace sfsat

#pragma once

#include <cstdint>

// Counter-based random streams for reproducible parallel Monte Carlo: the
// k-th draw of trajectory i depends only on (seed, i, k), never on thread
// scheduling. SplitMix64 is the mixer.
namespace ionload::rng {

inline constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
  z += golden;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t index)
      : state_(mix64(seed ^ mix64(index * golden + 0x243f6a8885a308d3ULL))) {}

  std::uint64_t next_u64() {
    state_ += golden;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1): 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]: safe for logarithms.
  double uniform_pos() { return 1.0 - uniform(); }

 private:
  std::uint64_t state_;
};

}  // namespace ionload::rng

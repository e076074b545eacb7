#pragma once

#include <cstdint>
#include <numbers>

namespace polyflow {

// SplitMix64 generator. Chosen over <random> engines because its output is
// fully pinned by this file: seeded runs reproduce bit for bit regardless of
// standard-library distribution internals.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform angle in [0, 2*pi).
  double next_angle() { return next_double() * 2.0 * std::numbers::pi; }

  // Derives an independent stream for substream k (per-start seeds etc.).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t k) {
    Rng r(seed ^ (0xd1b54a32d192ed03ULL * (k + 1)));
    return r.next_u64();
  }

private:
  std::uint64_t state_;
};

}  // namespace polyflow

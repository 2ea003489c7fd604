#ifndef SUBCAP_RNG_HPP
#define SUBCAP_RNG_HPP

#include <cstdint>

namespace subcap {

/// Deterministic counter-based generator (splitmix64). One instance per
/// worker; parallel runs derive stream w from a master seed as
/// Rng(master ^ w), which is the splitting rule all tools use.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng stream(std::uint64_t master_seed, std::uint64_t worker_index) {
    return Rng(master_seed ^ worker_index);
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n), rejection-sampled so every value is exactly
  /// equally likely. n must be nonzero.
  std::uint32_t uniform_below(std::uint32_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return static_cast<std::uint32_t>(v % n);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace subcap

#endif

#ifndef MUSTAFIN_RNG_HPP
#define MUSTAFIN_RNG_HPP

#include <cstdint>

namespace mustafin {

/// SplitMix64: a counter-based generator whose streams can be split by key,
/// so that trial k of a seeded experiment draws the same numbers on every
/// platform regardless of how the other trials ran.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    return mix(z);
  }

  /// Uniform in [0, bound) by rejection; bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r < limit) return r % bound;
    }
  }

  /// Independent stream for a sub-task.
  SplitMix64 split(std::uint64_t key) const { return SplitMix64(mix(state_ ^ mix(key + 0x632BE59BD9B4E019ull))); }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Seed of trial `index` in an experiment seeded with `seed`.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(seed).split(index).next();
}

}  // namespace mustafin

#endif  // MUSTAFIN_RNG_HPP

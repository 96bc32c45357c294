#pragma once

#include <cstdint>
#include <random>

namespace projmatch {

/// splitmix64 round; used to fan a single seed out to subcomponents and
/// to derive per-epoch seeds deterministically.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic uniform generator. Double draws avoid
/// std::uniform_real_distribution so sequences do not depend on the
/// standard library implementation.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  /// Uniform in [0,1) with 53 bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n).
  long index(long n) { return static_cast<long>(uniform01() * static_cast<double>(n)); }

private:
  std::mt19937_64 gen_;
};

}  // namespace projmatch

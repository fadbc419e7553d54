#ifndef MATCHMIX_RNG_HPP
#define MATCHMIX_RNG_HPP

#include <cstdint>
#include <random>

namespace matchmix {

/// Deterministic 64-bit generator for all sampling code.
///
/// Wraps std::mt19937_64 (whose output sequence is fixed by the standard)
/// and hand-rolls the draw functions, because the std::uniform_*
/// distributions are implementation-defined and would break cross-platform
/// reproducibility. Trial i of a multi-trial run uses stream(seed, i).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t trial) {
    return Rng(seed ^ trial);
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n), unbiased via rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double real() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return real() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace matchmix

#endif

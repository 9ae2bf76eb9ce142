#ifndef CURVLAB_RNG_HPP
#define CURVLAB_RNG_HPP

#include <cmath>
#include <cstdint>

namespace curvlab {

// Counter-based random stream: draw i is a pure function of (seed, stream, i)
// with no sequential state, so indexed draws can be evaluated from parallel
// loops in any order and still reproduce exactly.
//
// The word function is the SplitMix64 finalizer applied to
// seed/stream/counter combined with fixed odd constants. Uniforms take the
// top 53 bits; Gaussians use the Box-Muller transform on the logical draws
// 2i and 2i+1.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : base_(mix(seed) ^ mix(stream * 0x9E3779B97F4A7C15ull + 0x1ull)) {}

  // Uniform in [0, 1).
  double uniform(std::uint64_t i) const {
    return static_cast<double>(word(i) >> 11) * 0x1.0p-53;
  }

  // Uniform in (0, 1]; safe as a logarithm argument.
  double uniform_open(std::uint64_t i) const {
    return static_cast<double>((word(i) >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal variate.
  double gaussian(std::uint64_t i) const {
    const double u1 = uniform_open(2 * i);
    const double u2 = uniform(2 * i + 1);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  // Deterministic sub-seed derivation for split streams.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) {
    return mix(seed ^ mix(salt + 0x632BE59BD9B4E019ull));
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t word(std::uint64_t i) const {
    return mix(base_ + i * 0xD1342543DE82EF95ull);
  }

  std::uint64_t base_;
};

// Stream labels; values are arbitrary but frozen for reproducibility.
inline constexpr std::uint64_t kStreamTensor = 0x7431u;
inline constexpr std::uint64_t kStreamFrame = 0x46a2u;
inline constexpr std::uint64_t kStreamFilter = 0x91c7u;
inline constexpr std::uint64_t kStreamVector = 0x2cb5u;

}  // namespace curvlab

#endif  // CURVLAB_RNG_HPP

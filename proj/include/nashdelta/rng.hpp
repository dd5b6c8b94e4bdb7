#ifndef NASHDELTA_RNG_HPP
#define NASHDELTA_RNG_HPP

#include <cstdint>

namespace nashdelta {

/// Deterministic pseudo random stream. A (seed, stream_index) pair fully
/// determines the sequence, and distinct stream indices under one seed give
/// statistically independent sequences, so per-sample substreams can be
/// drawn without coordinating a shared cursor.
///
/// The generator is splitmix64 over a counter derived from both seed and
/// stream index; output is identical across platforms.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_index);

  std::uint64_t next_u64();

  /// Uniform draw in [0, 1) with 53 bits of mantissa.
  double next_unit();

  /// Standard normal via inverse transform of next_unit().
  double next_normal();

 private:
  std::uint64_t state_;
};

/// Standard normal CDF, accurate over the full double range.
double normal_cdf(double x);

/// Inverse of the standard normal CDF on (0, 1). Accurate to about 1e-15
/// after one Halley refinement step.
double normal_quantile(double p);

}  // namespace nashdelta

#endif

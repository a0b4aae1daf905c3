#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace bssize {

/// xoshiro256++ engine with exact normal and gamma deviates.
///
/// Every draw is computed by this class from the raw 64-bit stream, so a
/// given seed produces the same sequence on every platform and standard
/// library. Satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on the open interval (0, 1).
  double uniform();

  /// Standard normal via the Marsaglia polar method.
  double normal();

  /// Gamma(shape, rate = 1) via Marsaglia-Tsang squeeze, with the
  /// U^(1/shape) boost for shape < 1.
  double gamma(double shape);

 private:
  std::array<std::uint64_t, 4> s_{};
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Counter-based substream key: hashes the master seed together with an
/// ordered list of integer coordinates. Different coordinate tuples give
/// statistically independent streams; the result does not depend on the
/// order in which substreams are requested.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> coords);

}  // namespace bssize

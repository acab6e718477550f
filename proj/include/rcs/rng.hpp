#pragma once

#include <cstdint>

namespace rcs {

/// Counter-seeded splittable random stream: (master seed, stream index)
/// determines the whole draw sequence, distinct indices give independent
/// streams. The generator is xoshiro256** seeded through splitmix64, with all
/// derived distributions implemented here so output is bit-reproducible
/// across platforms and standard libraries.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index = 0);

  std::uint64_t next_u64();
  /// Uniform on [0,1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, bound), bound >= 1; unbiased via rejection.
  std::uint64_t below(std::uint64_t bound);
  double normal();
  /// Gamma(shape, 1), shape > 0 (Marsaglia-Tsang, with the boost for shape < 1).
  double gamma(double shape);
  double beta(double a, double b);
  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t master_seed() const { return master_; }
  std::uint64_t stream_index() const { return stream_; }

 private:
  std::uint64_t s_[4];
  std::uint64_t master_ = 0, stream_ = 0;
};

}  // namespace rcs

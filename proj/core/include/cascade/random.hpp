#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace cascade {

/// Seeded, platform-independent uniform sampler. Each substream index
/// yields an independent generator derived from (seed, index), so sampling
/// loops can be split across workers without changing results.
class UniformSampler {
 public:
  UniformSampler(std::uint64_t seed, std::uint64_t substream = 0);

  /// Uniform in [lo, hi). Uses the top 53 bits of the engine output so the
  /// sequence does not depend on the standard library's distributions.
  double uniform(double lo, double hi);

  std::vector<double> uniform_vector(std::size_t n, double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer, used to derive substream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace cascade

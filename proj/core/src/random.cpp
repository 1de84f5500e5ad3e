#include "cascade/random.hpp"

namespace cascade {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

UniformSampler::UniformSampler(std::uint64_t seed, std::uint64_t substream)
    : engine_(mix_seed(seed, substream)) {}

double UniformSampler::uniform(double lo, double hi) {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

std::vector<double> UniformSampler::uniform_vector(std::size_t n, double lo, double hi) {
  std::vector<double> out(n);
  for (auto& x : out) x = uniform(lo, hi);
  return out;
}

}  // namespace cascade

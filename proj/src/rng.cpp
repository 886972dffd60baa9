#include "mecsim/rng.hpp"

#include <stdexcept>

namespace mecsim {

namespace {
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
}  // namespace

Rng::Rng(std::uint64_t seed) {
  // splitmix64 expansion is the recommended way to fill xoshiro state; it
  // also guards against the all-zero state.
  std::uint64_t sm = seed;
  for (auto& word : s_) word = splitmix64_next(sm);
}

std::uint64_t Rng::mix(std::uint64_t seed, std::uint64_t stream) {
  // Run the stream id through two splitmix rounds keyed by the seed so that
  // consecutive stream ids land far apart in seed space.
  std::uint64_t sm = seed ^ (0x9E3779B97F4A7C15ull * (stream + 1));
  std::uint64_t a = splitmix64_next(sm);
  std::uint64_t b = splitmix64_next(sm);
  return a ^ (b << 1) ^ stream;
}

Rng Rng::substream(std::uint64_t seed, std::uint64_t stream) {
  return Rng(mix(seed, stream));
}

std::uint64_t Rng::uniform_int(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_int: n must be positive");
  // Classic rejection: draw until the value falls in the largest multiple of
  // n that fits in 64 bits.  Expected draws < 2 for any n.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v = next_u64();
  while (v >= limit) v = next_u64();
  return v % n;
}

std::size_t Rng::discrete(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("discrete: negative weight");
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("discrete: all weights zero");
  const double u = uniform() * total;
  double cdf = 0.0;
  for (std::size_t k = 0; k + 1 < weights.size(); ++k) {
    cdf += weights[k];
    if (u < cdf) return k;
  }
  return weights.empty() ? 0 : weights.size() - 1;
}

}  // namespace mecsim

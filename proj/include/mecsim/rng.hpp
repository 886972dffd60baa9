#ifndef MECSIM_RNG_HPP
#define MECSIM_RNG_HPP

#include <array>
#include <cstdint>
#include <vector>

namespace mecsim {

// Portable counter-splittable RNG.
//
// All stochastic pieces of the simulator (placement, task draws, price
// initialization, baseline coin flips) pull from independent substreams of a
// single master seed, so adding draws to one component never perturbs
// another.  The generator is fixed-width integer arithmetic only
// (splitmix64 seeding + xoshiro256** core) and therefore produces identical
// sequences on every platform; nothing here depends on libc rand or on
// std::uniform_real_distribution, whose outputs are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Derives the child seed for (seed, stream) without constructing the
  // generator; two distinct stream ids give statistically independent
  // sequences.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream);

  // Child generator for a named substream of `seed`.
  static Rng substream(std::uint64_t seed, std::uint64_t stream);

  inline std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) with 53 random bits; exactly one next_u64 call.
  inline double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  inline double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
  }

  // Uniform integer in [0, n); rejection-free multiply-shift would bias for
  // huge n, so use rejection sampling on the top bits (n is always small
  // here: number of edge servers, catalog size, ...).
  std::uint64_t uniform_int(std::uint64_t n);

  // Index draw proportional to non-negative weights (at least one positive);
  // consumes exactly one next_u64 regardless of outcome.
  std::size_t discrete(const std::vector<double>& weights);

 private:
  static inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> s_{};
};

// Named substream ids.  Per-device streams add the device index to the base.
namespace streams {
inline constexpr std::uint64_t kPlacement = 0x01;
inline constexpr std::uint64_t kPrices = 0x02;
inline constexpr std::uint64_t kShadowing = 0x03;
inline constexpr std::uint64_t kTaskBase = 0x1000;    // + md index
inline constexpr std::uint64_t kPolicyBase = 0x2000;  // + md index
inline constexpr std::uint64_t kEpisodeBase = 0x4000; // + episode counter
}  // namespace streams

}  // namespace mecsim

#endif  // MECSIM_RNG_HPP

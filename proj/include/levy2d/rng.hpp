#pragma once

#include <cstdint>

namespace levy2d {

// SplitMix64 (Steele/Lea/Vigna). Used for seeding and stream derivation only.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// xoshiro256++ 1.0 (Blackman/Vigna). The generator is spelled out here so
// results are reproducible across platforms and standard libraries.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  std::uint64_t operator()() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

// Uniform double in [0, 1) with 53 random bits.
template <class Rng>
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <class Rng>
inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// Deterministic per-stream generator: stream k of a given seed is independent
// of how many other streams exist, which keeps parallel runs reproducible.
inline Xoshiro256pp derived_stream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed ^ ((stream + 1) * 0xD1342543DE82EF95ULL);
  std::uint64_t sm = x;
  return Xoshiro256pp(splitmix64(sm));
}

}  // namespace levy2d

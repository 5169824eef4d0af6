#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace bocse {

// SplitMix64 step; used both as a generator seeder and as a mixing
// function for deriving independent per-task seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives a child seed from a parent seed and a label. Chaining calls
// gives hash(master, a, b, ...) streams that are independent per label
// tuple, so parallel tasks can own their own generators.
inline std::uint64_t seed_mix(std::uint64_t seed, std::uint64_t label) {
  std::uint64_t s = seed ^ (label + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
  return splitmix64(s);
}

// PCG32 (Melissa O'Neill's pcg32_oneseq). Small state, good quality,
// and fully specified arithmetic so streams are reproducible across
// platforms and standard-library versions.
class Pcg32 {
 public:
  explicit Pcg32(std::uint64_t seed) {
    std::uint64_t s = seed;
    state_ = splitmix64(s);
    state_ = state_ * kMult + kInc;
  }

  std::uint32_t next_u32() {
    std::uint64_t old = state_;
    state_ = old * kMult + kInc;
    std::uint32_t xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
  }

  std::uint64_t next_u64() {
    return (static_cast<std::uint64_t>(next_u32()) << 32) | next_u32();
  }

  // Uniform integer in [0, bound) by Lemire's multiply-shift with
  // rejection; unbiased and implementation-defined-free.
  std::uint32_t next_below(std::uint32_t bound) {
    std::uint64_t m = static_cast<std::uint64_t>(next_u32()) * bound;
    std::uint32_t low = static_cast<std::uint32_t>(m);
    if (low < bound) {
      std::uint32_t threshold = (0u - bound) % bound;
      while (low < threshold) {
        m = static_cast<std::uint64_t>(next_u32()) * bound;
        low = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

  bool next_bernoulli(double p) { return next_double() < p; }
  int next_bit() { return static_cast<int>(next_u32() >> 31); }

 private:
  static constexpr std::uint64_t kMult = 6364136223846793005ULL;
  static constexpr std::uint64_t kInc = 1442695040888963407ULL;
  std::uint64_t state_ = 0;
};

// In-place Fisher-Yates.
template <typename T>
void shuffle_span(std::span<T> v, Pcg32& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = rng.next_below(static_cast<std::uint32_t>(i));
    T tmp = v[i - 1];
    v[i - 1] = v[j];
    v[j] = tmp;
  }
}

// Hypergeometric draw: number of marked items in a sample of `draws`
// taken without replacement from a population of size `total` that
// contains `marked` marked items. Inverse-CDF walk outward from the
// mode, so the typical cost is O(standard deviation).
std::uint32_t hypergeometric(std::uint32_t total, std::uint32_t marked, std::uint32_t draws, Pcg32& rng);

}  // namespace bocse

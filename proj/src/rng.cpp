#include "bocse/rng.hpp"

#include <algorithm>

namespace bocse {

namespace {

double log_choose(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// pmf(k+1)/pmf(k) for Hypergeometric(total, marked, draws).
inline double pmf_ratio_up(double total, double marked, double draws, double k) {
  return (marked - k) * (draws - k) / ((k + 1.0) * (total - marked - draws + k + 1.0));
}

}  // namespace

std::uint32_t hypergeometric(std::uint32_t total, std::uint32_t marked, std::uint32_t draws, Pcg32& rng) {
  if (draws == 0 || marked == 0) return 0;
  if (marked >= total) return draws;
  if (draws >= total) return marked;

  std::uint32_t lo = draws + marked > total ? draws + marked - total : 0u;
  std::uint32_t hi = std::min(draws, marked);
  if (lo == hi) return lo;

  double n = total, m = marked, d = draws;
  std::uint32_t mode = static_cast<std::uint32_t>((d + 1.0) * (m + 1.0) / (n + 2.0));
  mode = std::clamp(mode, lo, hi);

  double p_mode = std::exp(log_choose(m, mode) + log_choose(n - m, d - mode) - log_choose(n, d));

  double u = rng.next_double();
  if (u < p_mode) return mode;
  u -= p_mode;

  // Alternate outward; consume probability mass until u is exhausted.
  double p_down = p_mode, p_up = p_mode;
  std::uint32_t k_down = mode, k_up = mode;
  std::uint32_t last = mode;
  while (k_down > lo || k_up < hi) {
    if (k_up < hi) {
      p_up *= pmf_ratio_up(n, m, d, static_cast<double>(k_up));
      ++k_up;
      last = k_up;
      if (u < p_up) return k_up;
      u -= p_up;
    }
    if (k_down > lo) {
      p_down /= pmf_ratio_up(n, m, d, static_cast<double>(k_down - 1));
      --k_down;
      last = k_down;
      if (u < p_down) return k_down;
      u -= p_down;
    }
  }
  // Floating-point residue (u ended within ~1e-15 of the total mass).
  return last;
}

}  // namespace bocse

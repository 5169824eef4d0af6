#pragma once

#include <cstdint>
#include <vector>

#include "bocse/info_theory.hpp"

namespace bocse {

struct SignificanceConfig {
  double alpha = 0.05;
  int permutations = 1000;
  std::uint64_t master_seed = 1;
  int max_parents = -1;  // inference guard; -1 = unlimited
  // Samples the permutation null by drawing the (X; Y,Z-cell)
  // contingency counts directly (multivariate hypergeometric), which
  // is the exact distribution of the counts under a uniform row
  // permutation of X. Much faster for long datasets; used by the
  // benchmark harness.
  bool fast_null = false;

  void validate() const;
};

// Where a test sits in the inference pipeline; determines its seed
// stream so that replicates are reproducible under parallelism.
struct TestContext {
  std::uint64_t target = 0;
  std::uint64_t stage = 0;  // 0 forward, 1 backward, 2 standalone
  std::uint64_t iteration = 0;
};

struct CmiTestResult {
  double estimate = 0.0;
  std::vector<double> null_samples;
  double threshold = 0.0;  // empirical F^{-1}(1-alpha) of the null
  double p_value = 1.0;    // (1 + #{null >= estimate}) / (1 + N)
  bool significant = false;
};

// Tests H0: I(X;Y|Z) = 0 by comparing the estimate against null
// samples I(X^sigma;Y|Z), sigma a uniform random permutation applied
// to X only. Deterministic given cfg.master_seed and ctx.
CmiTestResult permutation_test(const ColumnSet& x, const ColumnSet& y, const ColumnSet& z,
                               const SignificanceConfig& cfg, const TestContext& ctx = {});

namespace detail {
// Decision-only variant: may stop early once insignificance is
// certain (more than floor(alpha*N) null samples at or above the
// estimate). The decision equals the full run's; p_value/threshold
// are only meaningful when the test is significant.
CmiTestResult permutation_test_decision(const ColumnSet& x, const ColumnSet& y, const ColumnSet& z,
                                        const SignificanceConfig& cfg, const TestContext& ctx);
}  // namespace detail

}  // namespace bocse

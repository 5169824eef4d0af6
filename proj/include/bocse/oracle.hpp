#pragma once

#include <vector>

#include "bocse/boolean.hpp"
#include "bocse/info_theory.hpp"

namespace bocse {

struct OracleResult {
  // All subsets of minimum cardinality attaining the global maximum of
  // I(X^(K);Y) over |K| <= kmax, ties within 1e-12.
  std::vector<std::vector<int>> minimal_sets;
  double max_mi = 0.0;
};

// Brute-force enumeration of every input subset up to kmax; guarded by
// a combinatorial budget (sum of C(n,k) <= 10^7).
OracleResult exhaustive_minimal_subset(const Dataset& data, std::size_t target, int kmax);

// The declared parents a truth table actually depends on: parent j is
// essential iff flipping bit j changes the output for some pattern.
std::vector<int> exact_support(const BooleanTable& table, const std::vector<int>& parents);
std::vector<int> exact_support(const BooleanNetwork& net, int node);

}  // namespace bocse

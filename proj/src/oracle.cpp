#include "bocse/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace bocse {

namespace {

constexpr double kTie = 1e-12;

// Lexicographically next k-combination of {0..n-1}; false when done.
bool next_combination(std::vector<int>& comb, int n) {
  int k = static_cast<int>(comb.size());
  for (int i = k - 1; i >= 0; --i) {
    if (comb[i] < n - k + i) {
      ++comb[i];
      for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

double subsets_up_to(int n, int kmax) {
  double total = 0.0, c = 1.0;
  for (int k = 0; k <= kmax; ++k) {
    total += c;
    c = c * (n - k) / (k + 1);
  }
  return total;
}

}  // namespace

OracleResult exhaustive_minimal_subset(const Dataset& data, std::size_t target, int kmax) {
  if (target >= data.num_outputs()) throw std::invalid_argument("target output column out of range");
  int n = static_cast<int>(data.num_inputs());
  if (kmax < 0 || kmax > n) throw std::invalid_argument("kmax out of range");
  if (subsets_up_to(n, kmax) > 1e7) throw DataError("combinatorial budget exceeded");

  ColumnSet y = ColumnSet::output(data, target);
  auto mi_of = [&](const std::vector<int>& subset) {
    return mutual_information(ColumnSet::inputs(data, subset), y);
  };

  // Pass 1: global maximum and the best value per cardinality.
  std::vector<double> best_at_k(static_cast<std::size_t>(kmax) + 1, -1.0);
  double global_max = 0.0;  // the empty set gives MI 0
  best_at_k[0] = 0.0;
  for (int k = 1; k <= kmax; ++k) {
    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    do {
      double mi = mi_of(comb);
      if (mi > best_at_k[k]) best_at_k[k] = mi;
      if (mi > global_max) global_max = mi;
    } while (next_combination(comb, n));
  }

  int min_card = 0;
  while (best_at_k[min_card] < global_max - kTie) ++min_card;

  OracleResult res;
  res.max_mi = global_max;
  if (min_card == 0) {
    res.minimal_sets.push_back({});
    return res;
  }
  std::vector<int> comb(min_card);
  for (int i = 0; i < min_card; ++i) comb[i] = i;
  do {
    if (mi_of(comb) >= global_max - kTie) res.minimal_sets.push_back(comb);
  } while (next_combination(comb, n));
  return res;
}

std::vector<int> exact_support(const BooleanTable& table, const std::vector<int>& parents) {
  if (static_cast<int>(parents.size()) != table.arity)
    throw std::invalid_argument("parent list does not match table arity");
  for (Cell c : table.entries)
    if (c == Cell::NA) throw DataError("exact support needs an NA-free table");
  std::vector<int> support;
  std::size_t cells = table.entries.size();
  for (int b = 0; b < table.arity; ++b) {
    bool essential = false;
    for (std::size_t p = 0; p < cells && !essential; ++p)
      essential = table.entries[p] != table.entries[p ^ (std::size_t{1} << b)];
    if (essential) support.push_back(parents[static_cast<std::size_t>(b)]);
  }
  return support;
}

std::vector<int> exact_support(const BooleanNetwork& net, int node) {
  if (node < 0 || node >= net.n) throw std::invalid_argument("node id out of range");
  if (net.noise.at(static_cast<std::size_t>(node)) != 0.0)
    throw std::invalid_argument("exact support is defined for noiseless tables");
  return exact_support(net.tables[static_cast<std::size_t>(node)],
                       net.neighbors[static_cast<std::size_t>(node)]);
}

}  // namespace bocse

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bocse/dataset.hpp"
#include "bocse/rng.hpp"

namespace bocse {

enum class Cell : std::int8_t { Zero = 0, One = 1, NA = -1 };

enum class NaPolicy {
  Error,    // refuse to evaluate an unobserved pattern
  Default0  // total function: unobserved patterns evaluate to 0
};

// A k-ary truth table. Pattern index i encodes the input bit-string
// with bit 0 = first input. For fitted tables, `fractions` holds the
// per-pattern mean of the observed outputs and `counts` the number of
// observations; unobserved patterns are NA with count 0.
struct BooleanTable {
  int arity = 0;
  std::vector<Cell> entries;
  std::vector<std::uint32_t> counts;
  std::vector<double> fractions;  // NaN where NA

  std::size_t size() const { return entries.size(); }

  static BooleanTable constant(int arity, int value);
  // Table from a pattern->bit string, e.g. "0001" for AND (bit 0 first);
  // '-' marks NA. counts become 1 (0 for NA), fractions the entry value.
  static BooleanTable from_bits(int arity, const std::string& bits);

  void validate() const;
  std::string bits_string() const;  // '0'/'1'/'-' per pattern

  // Aligned text rendering in truth-table layout: one row per pattern,
  // k input columns, the output, and (when present) occurrence %.
  std::string pretty(const std::vector<std::string>& input_labels = {},
                     const std::string& output_label = "f",
                     const std::vector<double>* occurrences = nullptr) const;
};

std::size_t pattern_index(const std::vector<std::uint8_t>& bits);
std::vector<std::uint8_t> pattern_bits(std::size_t index, int arity);

int eval_function(const BooleanTable& table, const std::vector<std::uint8_t>& input,
                  NaPolicy na_policy = NaPolicy::Error);
int eval_stochastic(const BooleanTable& table, const std::vector<std::uint8_t>& input, double q,
                    Pcg32& rng, NaPolicy na_policy = NaPolicy::Error);

using AdjacencyMatrix = std::vector<std::vector<std::uint8_t>>;  // A[i][j]=1 iff j is a parent of i

// Node set, per-node sorted parent list, per-node truth table over the
// parents (in list order), and per-node flip probability.
struct BooleanNetwork {
  int n = 0;
  std::vector<std::vector<int>> neighbors;
  std::vector<BooleanTable> tables;
  std::vector<double> noise;

  void validate() const;
  AdjacencyMatrix adjacency() const;

  std::string to_json() const;
  static BooleanNetwork from_json(const std::string& text);
};

// Parent lists from an adjacency matrix, canonically sorted ascending.
std::vector<std::vector<int>> neighbors_from_adjacency(const AdjacencyMatrix& a);

using State = std::vector<std::uint8_t>;

State step_network(const BooleanNetwork& net, const State& state, Pcg32& rng,
                   NaPolicy na_policy = NaPolicy::Error);

// s(0)=init, s(t)=step(s(t-1)); returns T+1 states.
std::vector<State> simulate(const BooleanNetwork& net, const State& init, std::size_t steps,
                            Pcg32& rng, NaPolicy na_policy = NaPolicy::Error);

// Input-output pairs y(t) = x(t+1) from a state sequence.
Dataset pairs_from_timeseries(const std::vector<State>& series);

// Random network: each node gets `in_degree` distinct parents sampled
// uniformly (self excluded unless allowed), each table cell a fair coin,
// noise all zero.
BooleanNetwork random_network(int n, int in_degree, Pcg32& rng, bool include_self = false);

}  // namespace bocse

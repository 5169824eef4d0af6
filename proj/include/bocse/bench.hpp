#pragma once

#include <string>
#include <vector>

#include "bocse/datasets.hpp"
#include "bocse/inference.hpp"
#include "bocse/oracle.hpp"

namespace bocse {

// Plot-ready tabular result: one row per grid point, documented
// column headers, reproducible from (config, master_seed).
struct BenchResult {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  int reps = 0;
  std::uint64_t master_seed = 0;

  std::string to_csv() const;
};

// Smallest grid T at which the inferred adjacency exactly matches the
// essential-support ground truth of a random network, averaged over
// realizations; censored realizations record the grid maximum.
BenchResult bench_min_samples(const std::vector<int>& n_grid, int degree, int reps,
                              const std::vector<int>& t_grid, const SignificanceConfig& cfg);

// False positive / false negative edge ratios versus sample count for
// random networks of fixed size.
BenchResult bench_error_ratios(int n, int degree, const std::vector<int>& t_grid, int reps,
                               const SignificanceConfig& cfg);

struct AccuracyResult {
  double accuracy = 0.0;
  double fpr = 0.0;  // positive class = 1
  double fnr = 0.0;
};

AccuracyResult eval_accuracy(const InferenceResult& model, const Dataset& test,
                             PredictPolicy policy = PredictPolicy::Fallback);

// [H(Y), H(Y|X_{i1}), H(Y|X_{i1,i2}), ...]; non-increasing by the
// chain rule of plug-in entropies.
std::vector<double> uncertainty_curve(const Dataset& data, std::size_t target,
                                      const std::vector<int>& order);

// Parent-set stability under uniform down-sampling: false positives /
// negatives counted against the full-data parent set.
BenchResult downsample_stability(const Dataset& data, std::size_t target,
                                 const std::vector<int>& sizes, int reps,
                                 const SignificanceConfig& cfg);

// Essential-support edges of a noiseless network, as an l x n matrix.
AdjacencyMatrix essential_edges(const BooleanNetwork& net);

}  // namespace bocse

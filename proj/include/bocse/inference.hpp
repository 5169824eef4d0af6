#pragma once

#include <string>
#include <vector>

#include "bocse/boolean.hpp"
#include "bocse/significance.hpp"

namespace bocse {

struct ForwardStep {
  int column = -1;
  double gain = 0.0;  // I(X_k; Y | selected so far) at selection time
  double p_value = 1.0;
};

// forward_select picks argmax_j I(X_j;Y|X_selected) candidates and
// appends each only while the permutation test accepts it.
std::vector<ForwardStep> forward_select(const Dataset& data, std::size_t target,
                                        const SignificanceConfig& cfg);

// backward_eliminate repeatedly removes the argmin candidate whose
// conditional contribution the permutation test deems insignificant.
// Returns the survivors sorted ascending.
std::vector<int> backward_eliminate(const Dataset& data, std::size_t target,
                                    const std::vector<int>& candidates,
                                    const SignificanceConfig& cfg);

// Truth table over the (sorted) parents: per observed pattern the mean
// output g, the majority-vote entry (1 iff g >= 0.5), the observation
// count; unobserved patterns are NA. occurrences = counts / T.
std::pair<BooleanTable, std::vector<double>> fit_truth_table(const Dataset& data,
                                                             std::size_t target,
                                                             const std::vector<int>& parents);

struct InferenceResult {
  int target = 0;
  std::vector<ForwardStep> forward;
  std::vector<int> parents;  // post-elimination, sorted ascending
  BooleanTable table;        // fitted over `parents`; empty when not fitted
  bool table_fitted = false;
  std::vector<double> occurrences;
  double residual_uncertainty = 0.0;  // H(Y | parents)
  int fallback = 0;  // majority training output; prediction for NA patterns

  std::string to_json(const Dataset* data = nullptr) const;
  static InferenceResult from_json(const std::string& text);
  // Human-readable report: selection summary plus the fitted table in
  // truth-table layout with occurrence percentages.
  std::string report(const Dataset* data = nullptr) const;
};

InferenceResult infer_function(const Dataset& data, std::size_t target,
                               const SignificanceConfig& cfg);

struct NetworkInferenceResult {
  std::vector<InferenceResult> nodes;
  AdjacencyMatrix adjacency;

  std::string to_json() const;
};

// Applies infer_function to every output column (requires l = n data);
// node inferences may run in parallel, results are schedule-invariant.
NetworkInferenceResult infer_network(const Dataset& data, const SignificanceConfig& cfg);

// Prediction with the fitted table; NA patterns fall back per policy.
enum class PredictPolicy { Fallback, Zero, One, Error };
int predict(const InferenceResult& model, const std::vector<std::uint8_t>& input_row,
            PredictPolicy policy = PredictPolicy::Fallback);

}  // namespace bocse

#include "bocse/inference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "bocse/parallel.hpp"

namespace bocse {

namespace {

// One forward/backward sweep shares the (Y, Z) cell coding across all
// candidate columns.
double candidate_cmi(const detail::DenseCells& cells, const Dataset& data, int column,
                     std::vector<std::uint32_t>& scratch) {
  const auto& col = data.input(static_cast<std::size_t>(column));
  std::uint32_t ax = data.alphabet_size(static_cast<std::size_t>(column));
  detail::count_xyz(cells, {col.data(), col.size()}, ax, scratch);
  return detail::cmi_from_counts(cells, scratch, ax);
}

void check_target(const Dataset& data, std::size_t target) {
  if (target >= data.num_outputs()) throw std::invalid_argument("target output column out of range");
}

}  // namespace

std::vector<ForwardStep> forward_select(const Dataset& data, std::size_t target,
                                        const SignificanceConfig& cfg) {
  cfg.validate();
  check_target(data, target);
  ColumnSet y = ColumnSet::output(data, target);

  std::size_t n = data.num_inputs();
  std::vector<bool> selected(n, false);
  std::vector<int> chosen;
  std::vector<ForwardStep> steps;
  std::vector<std::uint32_t> scratch;

  std::size_t limit = cfg.max_parents < 0 ? n : std::min<std::size_t>(n, cfg.max_parents);
  for (std::size_t iter = 0; chosen.size() < limit; ++iter) {
    ColumnSet z = ColumnSet::inputs(data, chosen);
    detail::DenseCells cells = detail::make_dense_cells(y, z);

    int best = -1;
    double best_cmi = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (selected[j]) continue;
      double cmi = candidate_cmi(cells, data, static_cast<int>(j), scratch);
      if (cmi > best_cmi) {
        best_cmi = cmi;
        best = static_cast<int>(j);
      }
    }
    if (best < 0) break;

    TestContext ctx{static_cast<std::uint64_t>(target), 0, iter};
    ColumnSet x = ColumnSet::inputs(data, {best});
    CmiTestResult test = detail::permutation_test_decision(x, y, z, cfg, ctx);
    if (!test.significant) break;

    steps.push_back({best, test.estimate, test.p_value});
    selected[static_cast<std::size_t>(best)] = true;
    chosen.push_back(best);
  }
  return steps;
}

std::vector<int> backward_eliminate(const Dataset& data, std::size_t target,
                                    const std::vector<int>& candidates,
                                    const SignificanceConfig& cfg) {
  cfg.validate();
  check_target(data, target);
  ColumnSet y = ColumnSet::output(data, target);

  std::vector<int> kept = candidates;
  std::sort(kept.begin(), kept.end());
  std::vector<std::uint32_t> scratch;

  for (std::size_t round = 0; !kept.empty(); ++round) {
    int worst = -1;
    double worst_cmi = std::numeric_limits<double>::infinity();
    for (int j : kept) {
      std::vector<int> rest;
      for (int k : kept)
        if (k != j) rest.push_back(k);
      ColumnSet z = ColumnSet::inputs(data, rest);
      detail::DenseCells cells = detail::make_dense_cells(y, z);
      double cmi = candidate_cmi(cells, data, j, scratch);
      if (cmi < worst_cmi) {  // ties keep the earlier (lowest) index
        worst_cmi = cmi;
        worst = j;
      }
    }

    std::vector<int> rest;
    for (int k : kept)
      if (k != worst) rest.push_back(k);
    TestContext ctx{static_cast<std::uint64_t>(target), 1, round};
    ColumnSet x = ColumnSet::inputs(data, {worst});
    ColumnSet z = ColumnSet::inputs(data, rest);
    CmiTestResult test = detail::permutation_test_decision(x, y, z, cfg, ctx);
    if (test.significant) break;
    kept = std::move(rest);
  }
  return kept;
}

std::pair<BooleanTable, std::vector<double>> fit_truth_table(const Dataset& data,
                                                             std::size_t target,
                                                             const std::vector<int>& parents) {
  check_target(data, target);
  std::vector<int> sorted = parents;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("duplicate parent column");
  for (int j : sorted) {
    if (j < 0 || static_cast<std::size_t>(j) >= data.num_inputs())
      throw std::invalid_argument("parent column out of range");
    if (data.alphabet_size(static_cast<std::size_t>(j)) > 2)
      throw DataError("truth tables require Boolean parent columns");
  }
  int k = static_cast<int>(sorted.size());
  if (k > 24) throw DataError("too many parents to tabulate");

  std::size_t cells = std::size_t{1} << k;
  std::vector<std::uint32_t> counts(cells, 0), ones(cells, 0);
  const auto& ycol = data.output(target);
  for (std::size_t t = 0; t < data.rows(); ++t) {
    std::size_t idx = 0;
    for (int b = 0; b < k; ++b)
      if (data.input(static_cast<std::size_t>(sorted[b]))[t]) idx |= std::size_t{1} << b;
    ++counts[idx];
    ones[idx] += ycol[t];
  }

  BooleanTable table;
  table.arity = k;
  table.entries.resize(cells);
  table.counts = counts;
  table.fractions.resize(cells);
  std::vector<double> occurrences(cells);
  double total = static_cast<double>(data.rows());
  for (std::size_t i = 0; i < cells; ++i) {
    occurrences[i] = counts[i] / total;
    if (counts[i] == 0) {
      table.entries[i] = Cell::NA;
      table.fractions[i] = std::numeric_limits<double>::quiet_NaN();
    } else {
      double g = static_cast<double>(ones[i]) / counts[i];
      table.fractions[i] = g;
      table.entries[i] = g >= 0.5 ? Cell::One : Cell::Zero;
    }
  }
  return {std::move(table), std::move(occurrences)};
}

InferenceResult infer_function(const Dataset& data, std::size_t target,
                               const SignificanceConfig& cfg) {
  InferenceResult res;
  res.target = static_cast<int>(target);
  res.forward = forward_select(data, target, cfg);

  std::vector<int> forward_cols;
  for (const auto& s : res.forward) forward_cols.push_back(s.column);
  res.parents = backward_eliminate(data, target, forward_cols, cfg);

  auto [table, occ] = fit_truth_table(data, target, res.parents);
  res.table = std::move(table);
  res.occurrences = std::move(occ);
  res.table_fitted = true;

  res.residual_uncertainty =
      conditional_entropy(ColumnSet::output(data, target), ColumnSet::inputs(data, res.parents));

  const auto& ycol = data.output(target);
  std::size_t ones = 0;
  for (std::uint8_t v : ycol) ones += v;
  res.fallback = 2 * ones >= data.rows() ? 1 : 0;
  return res;
}

NetworkInferenceResult infer_network(const Dataset& data, const SignificanceConfig& cfg) {
  std::size_t l = data.num_outputs();
  if (l == 0) throw DataError("network inference needs output columns");
  NetworkInferenceResult out;
  out.nodes.resize(l);
  parallel_for(l, [&](std::size_t i) { out.nodes[i] = infer_function(data, i, cfg); });

  std::size_t n = data.num_inputs();
  out.adjacency.assign(l, std::vector<std::uint8_t>(n, 0));
  for (std::size_t i = 0; i < l; ++i)
    for (int j : out.nodes[i].parents) out.adjacency[i][static_cast<std::size_t>(j)] = 1;
  return out;
}

int predict(const InferenceResult& model, const std::vector<std::uint8_t>& input_row,
            PredictPolicy policy) {
  std::size_t idx = 0;
  for (std::size_t b = 0; b < model.parents.size(); ++b) {
    std::size_t col = static_cast<std::size_t>(model.parents[b]);
    if (col >= input_row.size()) throw std::invalid_argument("input row lacks a parent column");
    if (input_row[col]) idx |= std::size_t{1} << b;
  }
  Cell c = model.table.entries.at(idx);
  if (c != Cell::NA) return c == Cell::One ? 1 : 0;
  switch (policy) {
    case PredictPolicy::Fallback: return model.fallback;
    case PredictPolicy::Zero: return 0;
    case PredictPolicy::One: return 1;
    case PredictPolicy::Error: throw DataError("no fitted output for the requested pattern");
  }
  return model.fallback;
}

namespace {

std::string column_label(const Dataset* data, int column) {
  if (data && !data->input_names.empty() &&
      static_cast<std::size_t>(column) < data->input_names.size())
    return data->input_names[static_cast<std::size_t>(column)];
  return "X" + std::to_string(column + 1);
}

}  // namespace

std::string InferenceResult::to_json(const Dataset* data) const {
  nlohmann::json j;
  j["target"] = target;
  if (data && !data->output_names.empty() &&
      static_cast<std::size_t>(target) < data->output_names.size())
    j["targetName"] = data->output_names[static_cast<std::size_t>(target)];
  nlohmann::json fwd = nlohmann::json::array();
  for (const auto& s : forward) {
    nlohmann::json step{{"column", s.column}, {"gain", s.gain}, {"pValue", s.p_value}};
    if (data && !data->input_names.empty()) step["name"] = column_label(data, s.column);
    fwd.push_back(step);
  }
  j["forward"] = fwd;
  j["parents"] = parents;
  if (data && !data->input_names.empty()) {
    std::vector<std::string> names;
    for (int p : parents) names.push_back(column_label(data, p));
    j["parentNames"] = names;
  }
  if (table_fitted) {
    nlohmann::json jt;
    jt["arity"] = table.arity;
    jt["entries"] = table.bits_string();
    jt["counts"] = table.counts;
    nlohmann::json fr = nlohmann::json::array();
    for (double g : table.fractions)
      fr.push_back(std::isnan(g) ? nlohmann::json() : nlohmann::json(g));
    jt["fractions"] = fr;
    j["table"] = jt;
    j["occurrences"] = occurrences;
  }
  j["residualUncertainty"] = residual_uncertainty;
  j["fallback"] = fallback;
  return j.dump(2) + "\n";
}

InferenceResult InferenceResult::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("result JSON parse error: ") + e.what());
  }
  InferenceResult res;
  try {
    res.target = j.at("target").get<int>();
    for (const auto& s : j.at("forward"))
      res.forward.push_back(
          {s.at("column").get<int>(), s.at("gain").get<double>(), s.at("pValue").get<double>()});
    res.parents = j.at("parents").get<std::vector<int>>();
    if (j.contains("table")) {
      const auto& jt = j["table"];
      res.table = BooleanTable::from_bits(jt.at("arity").get<int>(),
                                          jt.at("entries").get<std::string>());
      if (jt.contains("counts")) res.table.counts = jt["counts"].get<std::vector<std::uint32_t>>();
      if (jt.contains("fractions")) {
        res.table.fractions.clear();
        for (const auto& v : jt["fractions"])
          res.table.fractions.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN()
                                                    : v.get<double>());
      }
      res.table_fitted = true;
      if (j.contains("occurrences")) res.occurrences = j["occurrences"].get<std::vector<double>>();
    }
    res.residual_uncertainty = j.value("residualUncertainty", 0.0);
    res.fallback = j.value("fallback", 0);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("result JSON field error: ") + e.what());
  }
  return res;
}

std::string InferenceResult::report(const Dataset* data) const {
  std::string out;
  char buf[160];
  out += "target: " + (data && !data->output_names.empty() &&
                               static_cast<std::size_t>(target) < data->output_names.size()
                           ? data->output_names[static_cast<std::size_t>(target)]
                           : "Y" + std::to_string(target + 1)) +
         "\n";
  out += "forward selection:\n";
  for (const auto& s : forward) {
    std::snprintf(buf, sizeof buf, "  %-28s gain %.6f bits  p=%.6g\n",
                  column_label(data, s.column).c_str(), s.gain, s.p_value);
    out += buf;
  }
  if (forward.empty()) out += "  (none)\n";
  out += "parents after elimination:";
  for (int p : parents) out += " " + column_label(data, p);
  if (parents.empty()) out += " (none)";
  out += "\n";
  std::snprintf(buf, sizeof buf, "residual uncertainty H(Y|parents): %.6f bits\n",
                residual_uncertainty);
  out += buf;
  if (table_fitted) {
    std::vector<std::string> labels;
    for (int p : parents) labels.push_back(column_label(data, p));
    out += table.pretty(labels, "Y", &occurrences);
  }
  return out;
}

std::string NetworkInferenceResult::to_json() const {
  nlohmann::json j;
  j["n"] = nodes.size();
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& node : nodes) arr.push_back(nlohmann::json::parse(node.to_json()));
  j["nodes"] = arr;
  std::vector<std::string> adj;
  for (const auto& row : adjacency) {
    std::string s(row.size(), '0');
    for (std::size_t c = 0; c < row.size(); ++c)
      if (row[c]) s[c] = '1';
    adj.push_back(s);
  }
  j["adjacency"] = adj;
  return j.dump(2) + "\n";
}

}  // namespace bocse

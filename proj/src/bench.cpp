#include "bocse/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "bocse/parallel.hpp"

namespace bocse {

namespace {

constexpr std::uint64_t kMinSamplesTag = 0xA15;
constexpr std::uint64_t kErrorRatioTag = 0xE88;
constexpr std::uint64_t kDownsampleTag = 0xD05;

State random_state(int n, Pcg32& rng) {
  State s(n);
  for (auto& b : s) b = static_cast<std::uint8_t>(rng.next_bit());
  return s;
}

struct EdgeErrors {
  double fnr = 0.0;
  double fpr = 0.0;
  bool exact = true;
};

// Compares over ordered non-self pairs; inferred self-loops fall
// outside the edge universe (the generated nets cannot have them).
EdgeErrors score_edges(const AdjacencyMatrix& truth, const AdjacencyMatrix& inferred) {
  std::size_t n = truth.size();
  std::size_t true_edges = 0, missed = 0, spurious = 0;
  bool self_inferred = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        if (inferred[i][j]) self_inferred = true;
        continue;
      }
      if (truth[i][j]) {
        ++true_edges;
        if (!inferred[i][j]) ++missed;
      } else if (inferred[i][j]) {
        ++spurious;
      }
    }
  }
  EdgeErrors e;
  std::size_t non_edges = n * (n - 1) - true_edges;
  e.fnr = true_edges == 0 ? 0.0 : static_cast<double>(missed) / true_edges;
  e.fpr = non_edges == 0 ? 0.0 : static_cast<double>(spurious) / non_edges;
  e.exact = missed == 0 && spurious == 0 && !self_inferred;
  return e;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double stdev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double m = mean(v), s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

void check_grid(const std::vector<int>& t_grid, int reps) {
  if (reps < 1) throw std::invalid_argument("realization count must be >= 1");
  if (t_grid.empty()) throw std::invalid_argument("sample-count grid must be non-empty");
  if (!std::is_sorted(t_grid.begin(), t_grid.end()))
    throw std::invalid_argument("sample-count grid must be ascending");
  if (t_grid.front() < 1) throw std::invalid_argument("sample counts must be positive");
}

}  // namespace

AdjacencyMatrix essential_edges(const BooleanNetwork& net) {
  AdjacencyMatrix a(net.n, std::vector<std::uint8_t>(net.n, 0));
  for (int i = 0; i < net.n; ++i)
    for (int j : exact_support(net, i)) a[i][static_cast<std::size_t>(j)] = 1;
  return a;
}

std::string BenchResult::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ",";
    out += columns[c];
  }
  out += "\n";
  char buf[40];
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ",";
      std::snprintf(buf, sizeof buf, "%.10g", row[c]);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

BenchResult bench_min_samples(const std::vector<int>& n_grid, int degree, int reps,
                              const std::vector<int>& t_grid, const SignificanceConfig& cfg) {
  check_grid(t_grid, reps);
  if (n_grid.empty()) throw std::invalid_argument("node-count grid must be non-empty");
  cfg.validate();

  BenchResult out;
  out.columns = {"n", "min_samples_mean", "min_samples_std", "censored", "reps"};
  out.reps = reps;
  out.master_seed = cfg.master_seed;

  for (int n : n_grid) {
    std::vector<double> min_t(reps, 0.0);
    std::vector<std::uint8_t> censored(reps, 0);
    parallel_for(static_cast<std::size_t>(reps), [&](std::size_t r) {
      std::uint64_t seed = seed_mix(seed_mix(seed_mix(cfg.master_seed, kMinSamplesTag),
                                             static_cast<std::uint64_t>(n)),
                                    r);
      Pcg32 rng(seed);
      BooleanNetwork net = random_network(n, degree, rng);
      AdjacencyMatrix truth = essential_edges(net);
      auto series = simulate(net, random_state(n, rng), static_cast<std::size_t>(t_grid.back()), rng);
      Dataset full = pairs_from_timeseries(series);

      SignificanceConfig run_cfg = cfg;
      run_cfg.master_seed = seed_mix(seed, 1);
      bool found = false;
      for (int t : t_grid) {
        NetworkInferenceResult inf = infer_network(full.prefix(static_cast<std::size_t>(t)), run_cfg);
        if (score_edges(truth, inf.adjacency).exact) {
          min_t[r] = t;
          found = true;
          break;
        }
      }
      if (!found) {
        min_t[r] = t_grid.back();
        censored[r] = 1;
      }
    });
    double cens = 0.0;
    for (auto c : censored) cens += c;
    out.rows.push_back({static_cast<double>(n), mean(min_t), stdev(min_t), cens,
                        static_cast<double>(reps)});
  }
  return out;
}

BenchResult bench_error_ratios(int n, int degree, const std::vector<int>& t_grid, int reps,
                               const SignificanceConfig& cfg) {
  check_grid(t_grid, reps);
  cfg.validate();

  std::size_t points = t_grid.size();
  std::vector<std::vector<double>> fnr(points, std::vector<double>(reps, 0.0));
  std::vector<std::vector<double>> fpr(points, std::vector<double>(reps, 0.0));

  parallel_for(static_cast<std::size_t>(reps), [&](std::size_t r) {
    std::uint64_t seed = seed_mix(seed_mix(cfg.master_seed, kErrorRatioTag), r);
    Pcg32 rng(seed);
    BooleanNetwork net = random_network(n, degree, rng);
    AdjacencyMatrix truth = essential_edges(net);
    auto series = simulate(net, random_state(n, rng), static_cast<std::size_t>(t_grid.back()), rng);
    Dataset full = pairs_from_timeseries(series);

    SignificanceConfig run_cfg = cfg;
    run_cfg.master_seed = seed_mix(seed, 1);
    for (std::size_t p = 0; p < points; ++p) {
      NetworkInferenceResult inf =
          infer_network(full.prefix(static_cast<std::size_t>(t_grid[p])), run_cfg);
      EdgeErrors e = score_edges(truth, inf.adjacency);
      fnr[p][r] = e.fnr;
      fpr[p][r] = e.fpr;
    }
  });

  BenchResult out;
  out.columns = {"samples", "fnr_mean", "fnr_std", "fpr_mean", "fpr_std", "reps"};
  out.reps = reps;
  out.master_seed = cfg.master_seed;
  for (std::size_t p = 0; p < points; ++p)
    out.rows.push_back({static_cast<double>(t_grid[p]), mean(fnr[p]), stdev(fnr[p]), mean(fpr[p]),
                        stdev(fpr[p]), static_cast<double>(reps)});
  return out;
}

AccuracyResult eval_accuracy(const InferenceResult& model, const Dataset& test,
                             PredictPolicy policy) {
  if (static_cast<std::size_t>(model.target) >= test.num_outputs())
    throw DataError("test data lacks the model's target column");
  for (int p : model.parents)
    if (static_cast<std::size_t>(p) >= test.num_inputs())
      throw DataError("test data lacks a parent column of the model");

  std::size_t correct = 0, fp = 0, fn = 0, pos = 0, neg = 0;
  std::vector<std::uint8_t> row(test.num_inputs());
  for (std::size_t t = 0; t < test.rows(); ++t) {
    for (std::size_t j = 0; j < test.num_inputs(); ++j) row[j] = test.input(j)[t];
    int pred = predict(model, row, policy);
    int actual = test.output(static_cast<std::size_t>(model.target))[t];
    if (pred == actual) ++correct;
    if (actual == 1) {
      ++pos;
      if (pred == 0) ++fn;
    } else {
      ++neg;
      if (pred == 1) ++fp;
    }
  }
  AccuracyResult res;
  res.accuracy = static_cast<double>(correct) / static_cast<double>(test.rows());
  res.fpr = neg == 0 ? 0.0 : static_cast<double>(fp) / static_cast<double>(neg);
  res.fnr = pos == 0 ? 0.0 : static_cast<double>(fn) / static_cast<double>(pos);
  return res;
}

std::vector<double> uncertainty_curve(const Dataset& data, std::size_t target,
                                      const std::vector<int>& order) {
  if (target >= data.num_outputs()) throw std::invalid_argument("target output column out of range");
  for (int j : order)
    if (j < 0 || static_cast<std::size_t>(j) >= data.num_inputs())
      throw std::invalid_argument("curve order references an invalid column");
  ColumnSet y = ColumnSet::output(data, target);
  std::vector<double> curve;
  curve.reserve(order.size() + 1);
  for (std::size_t k = 0; k <= order.size(); ++k) {
    std::vector<int> prefix(order.begin(), order.begin() + static_cast<long>(k));
    curve.push_back(conditional_entropy(y, ColumnSet::inputs(data, prefix)));
  }
  return curve;
}

BenchResult downsample_stability(const Dataset& data, std::size_t target,
                                 const std::vector<int>& sizes, int reps,
                                 const SignificanceConfig& cfg) {
  if (reps < 1) throw std::invalid_argument("realization count must be >= 1");
  if (sizes.empty()) throw std::invalid_argument("size grid must be non-empty");
  for (int s : sizes) {
    if (s < 1) throw std::invalid_argument("sample size must be >= 1");
    if (static_cast<std::size_t>(s) > data.rows())
      throw std::invalid_argument("sample size exceeds the dataset");
  }
  cfg.validate();

  InferenceResult full = infer_function(data, target, cfg);
  std::vector<std::uint8_t> reference(data.num_inputs(), 0);
  for (int p : full.parents) reference[static_cast<std::size_t>(p)] = 1;

  BenchResult out;
  out.columns = {"size", "false_positives_mean", "false_positives_std", "false_negatives_mean",
                 "false_negatives_std", "reps"};
  out.reps = reps;
  out.master_seed = cfg.master_seed;

  std::uint32_t rows = static_cast<std::uint32_t>(data.rows());
  for (int size : sizes) {
    std::vector<double> fps(reps, 0.0), fns(reps, 0.0);
    parallel_for(static_cast<std::size_t>(reps), [&](std::size_t r) {
      std::uint64_t seed = seed_mix(seed_mix(seed_mix(cfg.master_seed, kDownsampleTag),
                                             static_cast<std::uint64_t>(size)),
                                    r);
      Pcg32 rng(seed);
      // order-preserving sample without replacement
      std::vector<std::uint32_t> pool(rows);
      for (std::uint32_t i = 0; i < rows; ++i) pool[i] = i;
      for (int k = 0; k < size; ++k) {
        std::uint32_t j = rng.next_below(rows - static_cast<std::uint32_t>(k));
        std::swap(pool[k], pool[k + j]);
      }
      std::vector<std::uint32_t> idx(pool.begin(), pool.begin() + size);
      std::sort(idx.begin(), idx.end());

      SignificanceConfig run_cfg = cfg;
      run_cfg.master_seed = seed_mix(seed, 1);
      InferenceResult sub = infer_function(data.select_rows(idx), target, run_cfg);
      int fp = 0, fn = 0;
      std::vector<std::uint8_t> got(data.num_inputs(), 0);
      for (int p : sub.parents) got[static_cast<std::size_t>(p)] = 1;
      for (std::size_t j = 0; j < got.size(); ++j) {
        if (got[j] && !reference[j]) ++fp;
        if (!got[j] && reference[j]) ++fn;
      }
      fps[r] = fp;
      fns[r] = fn;
    });
    out.rows.push_back({static_cast<double>(size), mean(fps), stdev(fps), mean(fns), stdev(fns),
                        static_cast<double>(reps)});
  }
  return out;
}

}  // namespace bocse

// bocse: learn Boolean network structure and functions from binary or
// categorical observational data.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bocse/bench.hpp"
#include "bocse/datasets.hpp"
#include "bocse/inference.hpp"
#include "bocse/parallel.hpp"

namespace {

using namespace bocse;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write file: " + out_path);
  out << content;
}

// Generic delimited loader: header row with column names, integer
// symbols, the last `outputs` columns Boolean targets.
Dataset load_generic_csv(const std::string& path, int outputs) {
  std::string text = read_file(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> names;
  {
    std::istringstream hs(line);
    std::string f;
    while (std::getline(hs, f, ',')) names.push_back(f);
  }
  if (outputs < 1 || static_cast<std::size_t>(outputs) >= names.size())
    throw DataError("output column count out of range for " + path);
  std::vector<std::vector<std::uint8_t>> in_rows, out_rows;
  std::size_t ncols = names.size();
  std::size_t nin = ncols - static_cast<std::size_t>(outputs);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string f;
    std::vector<std::uint8_t> row;
    while (std::getline(ls, f, ',')) {
      int v;
      try {
        v = std::stoi(f);
      } catch (const std::exception&) {
        throw DataError(path + " line " + std::to_string(line_no) + ": not an integer: " + f);
      }
      if (v < 0 || v > 255)
        throw DataError(path + " line " + std::to_string(line_no) + ": symbol out of range");
      row.push_back(static_cast<std::uint8_t>(v));
    }
    if (row.size() != ncols)
      throw DataError(path + " line " + std::to_string(line_no) + ": wrong field count");
    in_rows.push_back({row.begin(), row.begin() + static_cast<long>(nin)});
    out_rows.push_back({row.begin() + static_cast<long>(nin), row.end()});
  }
  Dataset d = make_dataset(in_rows, out_rows);
  d.input_names.assign(names.begin(), names.begin() + static_cast<long>(nin));
  d.output_names.assign(names.begin() + static_cast<long>(nin), names.end());
  return d;
}

struct DataOptions {
  std::string path;
  std::string format = "auto";
  int csv_outputs = 1;
  std::optional<double> lc_threshold;
  std::string lc_mapping;

  void attach(CLI::App* cmd, bool required = true) {
    auto* opt = cmd->add_option("--data", path, "input dataset file");
    if (required) opt->required();
    cmd->add_option("--format", format,
                    "data format: auto|canonical|csv|inflammations|spect|tictactoe|lendingclub")
        ->check(CLI::IsMember(
            {"auto", "canonical", "csv", "inflammations", "spect", "tictactoe", "lendingclub"}));
    cmd->add_option("--csv-outputs", csv_outputs,
                    "for --format csv: number of trailing output columns");
    cmd->add_option("--lc-threshold", lc_threshold,
                    "for --format lendingclub: loan-to-income threshold (default: median)");
    cmd->add_option("--lc-mapping", lc_mapping,
                    "for --format lendingclub: JSON file mapping semantic fields to headers");
  }

  Dataset load() const {
    std::string fmt = format;
    if (fmt == "auto") {
      if (path.ends_with(".json")) fmt = "canonical";
      else {
        std::string head = read_file(path).substr(0, 64);
        std::size_t p = head.find_first_not_of(" \t\r\n");
        fmt = (p != std::string::npos && head[p] == '{') ? "canonical" : "csv";
      }
    }
    if (fmt == "canonical") return Dataset::from_json(read_file(path));
    if (fmt == "csv") return load_generic_csv(path, csv_outputs);
    if (fmt == "inflammations") return load_acute_inflammations(path).data;
    if (fmt == "spect") return load_spect_file(path).data;
    if (fmt == "tictactoe") return load_tictactoe(path).data;
    if (fmt == "lendingclub") {
      LendingClubMapping m;
      if (!lc_mapping.empty()) m = LendingClubMapping::from_json_file(lc_mapping);
      return load_lendingclub(path, lc_threshold, m).data;
    }
    throw DataError("unknown data format: " + fmt);
  }
};

int resolve_target(const Dataset& data, const std::string& target) {
  for (std::size_t j = 0; j < data.output_names.size(); ++j)
    if (data.output_names[j] == target) return static_cast<int>(j);
  try {
    int t = std::stoi(target);  // 1-based, as in the report output
    if (t >= 1 && static_cast<std::size_t>(t) <= data.num_outputs()) return t - 1;
  } catch (const std::exception&) {
  }
  throw DataError("unknown target column: " + target);
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::istringstream ss(csv);
  std::string f;
  while (std::getline(ss, f, ',')) {
    if (f.empty()) continue;
    out.push_back(std::stoi(f));
  }
  return out;
}

PredictPolicy parse_policy(const std::string& s) {
  if (s == "majority") return PredictPolicy::Fallback;
  if (s == "zero") return PredictPolicy::Zero;
  if (s == "one") return PredictPolicy::One;
  if (s == "error") return PredictPolicy::Error;
  throw DataError("unknown NA policy: " + s);
}

char fmt_buf[64];
std::string fmt(double v) {
  std::snprintf(fmt_buf, sizeof fmt_buf, "%.10g", v);
  return fmt_buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BoCSE: Boolean network structure and function learning"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker thread budget (0 = hardware)");

  // shared inference knobs
  struct InferOpts {
    double alpha = 0.05;
    int permutations = 1000;
    std::uint64_t seed = 1;
    int max_parents = -1;
    bool fast_null = false;

    void attach(CLI::App* cmd, bool fast_default = false) {
      cmd->add_option("--alpha", alpha, "significance level (default 0.05)");
      cmd->add_option("--permutations", permutations, "permutation count (default 1000)");
      cmd->add_option("--seed", seed, "master seed");
      cmd->add_option("--max-parents", max_parents, "cap on selected parents (-1 = unlimited)");
      fast_null = fast_default;
      cmd->add_flag("--fast-null,!--shuffle-null", fast_null,
                    "sample the permutation null by margin-preserving count resampling");
    }

    SignificanceConfig config() const {
      SignificanceConfig cfg;
      cfg.alpha = alpha;
      cfg.permutations = permutations;
      cfg.master_seed = seed;
      cfg.max_parents = max_parents;
      cfg.fast_null = fast_null;
      return cfg;
    }
  };

  std::string out_path;

  // ---- infer
  auto* infer = app.add_subcommand("infer", "learn parents and the Boolean function of a target");
  DataOptions infer_data;
  infer_data.attach(infer);
  InferOpts infer_opts;
  infer_opts.attach(infer);
  std::string infer_target = "1";
  std::string infer_emit = "json";
  infer->add_option("--target", infer_target, "output column (1-based index, name, or 'all')");
  infer->add_option("--emit", infer_emit, "output format: json|report")
      ->check(CLI::IsMember({"json", "report"}));
  infer->add_option("--out", out_path, "write to file instead of stdout");

  // ---- simulate
  auto* sim = app.add_subcommand("simulate", "advance a Boolean network from an initial state");
  std::string sim_net, sim_init = "random";
  int sim_steps = 10;
  std::uint64_t sim_seed = 1;
  sim->add_option("--net", sim_net, "network JSON file")->required();
  sim->add_option("--init", sim_init, "initial state bit string, or 'random'");
  sim->add_option("--steps", sim_steps, "number of steps");
  sim->add_option("--seed", sim_seed, "master seed");
  sim->add_option("--out", out_path, "write to file instead of stdout");

  // ---- generate
  auto* gen = app.add_subcommand("generate", "draw a random Boolean network");
  int gen_nodes = 10, gen_degree = 2;
  std::uint64_t gen_seed = 1;
  bool gen_self = false;
  gen->add_option("--nodes", gen_nodes, "node count")->required();
  gen->add_option("--degree", gen_degree, "in-degree of every node")->required();
  gen->add_option("--seed", gen_seed, "master seed");
  gen->add_flag("--allow-self-loops", gen_self, "permit a node among its own parents");
  gen->add_option("--out", out_path, "write to file instead of stdout");

  // ---- bench
  auto* bench = app.add_subcommand("bench", "reproducible experiment harness");
  bench->require_subcommand(1);

  auto* bms = bench->add_subcommand("min-samples", "samples needed for exact recovery vs n");
  std::string bms_ngrid = "10,20,40", bms_tgrid = "16,32,64,128,256,512,1024,2048,4096,8192,16384";
  int bms_degree = 3, bms_reps = 50;
  InferOpts bms_opts;
  bms->add_option("--n-grid", bms_ngrid, "comma-separated node counts");
  bms->add_option("--degree", bms_degree, "in-degree");
  bms->add_option("--t-grid", bms_tgrid, "ascending comma-separated sample counts");
  bms->add_option("--reps", bms_reps, "realizations per grid point");
  bms_opts.attach(bms, /*fast_default=*/true);
  bms->add_option("--out", out_path, "write to file instead of stdout");

  auto* ber = bench->add_subcommand("error-ratios", "edge error ratios vs sample count");
  std::string ber_tgrid = "64,256,1024,4096,16384";
  int ber_nodes = 50, ber_degree = 3, ber_reps = 50;
  InferOpts ber_opts;
  ber->add_option("--nodes", ber_nodes, "network size");
  ber->add_option("--degree", ber_degree, "in-degree");
  ber->add_option("--t-grid", ber_tgrid, "ascending comma-separated sample counts");
  ber->add_option("--reps", ber_reps, "realizations");
  ber_opts.attach(ber, /*fast_default=*/true);
  ber->add_option("--out", out_path, "write to file instead of stdout");

  auto* bds = bench->add_subcommand("downsample", "parent-set stability under down-sampling");
  DataOptions bds_data;
  bds_data.attach(bds);
  std::string bds_target = "1", bds_sizes = "10,20,30,40,50,60,70,80,90,100,110,120";
  int bds_reps = 50;
  InferOpts bds_opts;
  bds->add_option("--target", bds_target, "output column (1-based index or name)");
  bds->add_option("--sizes", bds_sizes, "comma-separated subsample sizes");
  bds->add_option("--reps", bds_reps, "repetitions per size");
  bds_opts.attach(bds);
  bds->add_option("--out", out_path, "write to file instead of stdout");

  // ---- eval
  auto* eval = app.add_subcommand("eval", "evaluate a fitted model on a test set");
  std::string eval_model, eval_policy = "majority";
  DataOptions eval_data;
  eval->add_option("--model", eval_model, "inference result JSON")->required();
  eval_data.attach(eval, /*required=*/false);
  eval->add_option("--test", eval_data.path, "test dataset file")->required();
  eval->add_option("--na-policy", eval_policy, "majority|zero|one|error");
  eval->add_option("--out", out_path, "write to file instead of stdout");

  // ---- curve
  auto* curve = app.add_subcommand("curve", "conditional-entropy curve along a column order");
  DataOptions curve_data;
  curve_data.attach(curve);
  std::string curve_target = "1", curve_order = "auto";
  InferOpts curve_opts;
  curve->add_option("--target", curve_target, "output column (1-based index or name)");
  curve->add_option("--order", curve_order,
                    "comma-separated 1-based columns, or 'auto' for the forward-selection order");
  curve_opts.attach(curve);
  curve->add_option("--out", out_path, "write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  set_thread_budget(threads);

  try {
    if (*infer) {
      Dataset data = infer_data.load();
      SignificanceConfig cfg = infer_opts.config();
      if (infer_target == "all") {
        NetworkInferenceResult res = infer_network(data, cfg);
        if (infer_emit == "json") {
          emit(out_path, res.to_json());
        } else {
          std::string text;
          for (const auto& node : res.nodes) text += node.report(&data) + "\n";
          emit(out_path, text);
        }
      } else {
        int target = resolve_target(data, infer_target);
        InferenceResult res = infer_function(data, static_cast<std::size_t>(target), cfg);
        emit(out_path, infer_emit == "json" ? res.to_json(&data) : res.report(&data));
      }
    } else if (*sim) {
      BooleanNetwork net = BooleanNetwork::from_json(read_file(sim_net));
      Pcg32 rng(seed_mix(sim_seed, 0x51));
      State init(net.n);
      if (sim_init == "random") {
        for (auto& b : init) b = static_cast<std::uint8_t>(rng.next_bit());
      } else {
        if (static_cast<int>(sim_init.size()) != net.n)
          throw DataError("initial state length does not match the network");
        for (int i = 0; i < net.n; ++i) {
          if (sim_init[i] != '0' && sim_init[i] != '1')
            throw DataError("initial state must be a bit string");
          init[i] = sim_init[i] == '1';
        }
      }
      auto series = simulate(net, init, static_cast<std::size_t>(sim_steps), rng);
      std::string csv = "t";
      for (int i = 1; i <= net.n; ++i) csv += ",x" + std::to_string(i);
      csv += "\n";
      for (std::size_t t = 0; t < series.size(); ++t) {
        csv += std::to_string(t);
        for (auto b : series[t]) csv += b ? ",1" : ",0";
        csv += "\n";
      }
      emit(out_path, csv);
    } else if (*gen) {
      Pcg32 rng(seed_mix(gen_seed, 0x6E));
      BooleanNetwork net = random_network(gen_nodes, gen_degree, rng, gen_self);
      emit(out_path, net.to_json());
    } else if (*bms) {
      BenchResult res = bench_min_samples(parse_int_list(bms_ngrid), bms_degree, bms_reps,
                                          parse_int_list(bms_tgrid), bms_opts.config());
      emit(out_path, res.to_csv());
    } else if (*ber) {
      BenchResult res = bench_error_ratios(ber_nodes, ber_degree, parse_int_list(ber_tgrid),
                                           ber_reps, ber_opts.config());
      emit(out_path, res.to_csv());
    } else if (*bds) {
      Dataset data = bds_data.load();
      int target = resolve_target(data, bds_target);
      BenchResult res = downsample_stability(data, static_cast<std::size_t>(target),
                                             parse_int_list(bds_sizes), bds_reps,
                                             bds_opts.config());
      emit(out_path, res.to_csv());
    } else if (*eval) {
      InferenceResult model = InferenceResult::from_json(read_file(eval_model));
      Dataset test = eval_data.load();
      AccuracyResult res = eval_accuracy(model, test, parse_policy(eval_policy));
      emit(out_path, "accuracy,fpr,fnr\n" + fmt(res.accuracy) + "," + fmt(res.fpr) + "," +
                         fmt(res.fnr) + "\n");
    } else if (*curve) {
      Dataset data = curve_data.load();
      int target = resolve_target(data, curve_target);
      std::vector<int> order;
      if (curve_order == "auto") {
        auto steps = forward_select(data, static_cast<std::size_t>(target), curve_opts.config());
        for (const auto& s : steps) order.push_back(s.column);
      } else {
        for (int c : parse_int_list(curve_order)) {
          if (c < 1 || static_cast<std::size_t>(c) > data.num_inputs())
            throw DataError("curve order column out of range: " + std::to_string(c));
          order.push_back(c - 1);
        }
      }
      auto values = uncertainty_curve(data, static_cast<std::size_t>(target), order);
      std::string csv = "k,added_column,entropy_bits\n";
      for (std::size_t k = 0; k < values.size(); ++k) {
        csv += std::to_string(k) + ",";
        csv += k == 0 ? "0" : std::to_string(order[k - 1] + 1);
        csv += "," + fmt(values[k]) + "\n";
      }
      emit(out_path, csv);
    }
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

#include "bocse/boolean.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace bocse {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

BooleanTable BooleanTable::constant(int arity, int value) {
  if (arity < 0 || arity > 24) throw std::invalid_argument("table arity out of range");
  if (value != 0 && value != 1) throw std::invalid_argument("constant value must be a bit");
  BooleanTable t;
  t.arity = arity;
  std::size_t cells = std::size_t{1} << arity;
  t.entries.assign(cells, value ? Cell::One : Cell::Zero);
  t.counts.assign(cells, 1);
  t.fractions.assign(cells, static_cast<double>(value));
  return t;
}

BooleanTable BooleanTable::from_bits(int arity, const std::string& bits) {
  if (arity < 0 || arity > 24) throw std::invalid_argument("table arity out of range");
  std::size_t cells = std::size_t{1} << arity;
  if (bits.size() != cells) throw std::invalid_argument("bit string length must be 2^arity");
  BooleanTable t;
  t.arity = arity;
  t.entries.reserve(cells);
  t.counts.reserve(cells);
  t.fractions.reserve(cells);
  for (char c : bits) {
    switch (c) {
      case '0':
        t.entries.push_back(Cell::Zero);
        t.counts.push_back(1);
        t.fractions.push_back(0.0);
        break;
      case '1':
        t.entries.push_back(Cell::One);
        t.counts.push_back(1);
        t.fractions.push_back(1.0);
        break;
      case '-':
        t.entries.push_back(Cell::NA);
        t.counts.push_back(0);
        t.fractions.push_back(kNaN);
        break;
      default:
        throw std::invalid_argument("table bit string may contain only '0', '1', '-'");
    }
  }
  return t;
}

void BooleanTable::validate() const {
  std::size_t cells = std::size_t{1} << arity;
  if (entries.size() != cells || counts.size() != cells || fractions.size() != cells)
    throw std::logic_error("table arrays must have 2^arity cells");
  for (std::size_t i = 0; i < cells; ++i) {
    bool na = entries[i] == Cell::NA;
    if (na != (counts[i] == 0) || na != std::isnan(fractions[i]))
      throw std::logic_error("NA cells must have zero count and NaN fraction");
    if (!na && (fractions[i] < 0.0 || fractions[i] > 1.0))
      throw std::logic_error("fraction outside [0,1]");
  }
}

std::string BooleanTable::bits_string() const {
  std::string s;
  s.reserve(entries.size());
  for (Cell c : entries) s += c == Cell::NA ? '-' : (c == Cell::One ? '1' : '0');
  return s;
}

std::string BooleanTable::pretty(const std::vector<std::string>& input_labels,
                                 const std::string& output_label,
                                 const std::vector<double>* occurrences) const {
  std::vector<std::string> labels = input_labels;
  for (int j = static_cast<int>(labels.size()); j < arity; ++j)
    labels.push_back("x" + std::to_string(j + 1));
  std::string out;
  for (int j = 0; j < arity; ++j) out += " " + labels[j];
  out += " | " + output_label;
  if (occurrences) out += " | occurrence";
  out += "\n";
  char buf[32];
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto bits = pattern_bits(i, arity);
    for (int j = 0; j < arity; ++j) {
      std::string pad(labels[j].size(), ' ');
      pad[pad.size() - 1] = bits[j] ? '1' : '0';
      out += " " + pad;
    }
    out += " | ";
    out += entries[i] == Cell::NA ? "N/A" : (entries[i] == Cell::One ? "1" : "0");
    if (occurrences) {
      std::snprintf(buf, sizeof buf, " | %6.2f%%", 100.0 * (*occurrences)[i]);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

std::size_t pattern_index(const std::vector<std::uint8_t>& bits) {
  std::size_t idx = 0;
  for (std::size_t j = 0; j < bits.size(); ++j)
    if (bits[j]) idx |= std::size_t{1} << j;
  return idx;
}

std::vector<std::uint8_t> pattern_bits(std::size_t index, int arity) {
  std::vector<std::uint8_t> bits(arity);
  for (int j = 0; j < arity; ++j) bits[j] = (index >> j) & 1u;
  return bits;
}

int eval_function(const BooleanTable& table, const std::vector<std::uint8_t>& input,
                  NaPolicy na_policy) {
  if (static_cast<int>(input.size()) != table.arity)
    throw std::invalid_argument("input length does not match table arity");
  Cell c = table.entries[pattern_index(input)];
  if (c == Cell::NA) {
    if (na_policy == NaPolicy::Error)
      throw DataError("truth table has no output for the requested pattern");
    return 0;
  }
  return c == Cell::One ? 1 : 0;
}

int eval_stochastic(const BooleanTable& table, const std::vector<std::uint8_t>& input, double q,
                    Pcg32& rng, NaPolicy na_policy) {
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("noise probability must be in [0,1]");
  int y = eval_function(table, input, na_policy);
  return rng.next_bernoulli(q) ? 1 - y : y;
}

void BooleanNetwork::validate() const {
  if (n < 0) throw std::logic_error("negative node count");
  if (static_cast<int>(neighbors.size()) != n || static_cast<int>(tables.size()) != n ||
      static_cast<int>(noise.size()) != n)
    throw std::logic_error("per-node arrays must have n entries");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(neighbors[i].size()) != tables[i].arity)
      throw std::logic_error("table arity must equal the parent count");
    std::vector<int> sorted = neighbors[i];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::logic_error("duplicate parent id");
    for (int j : neighbors[i])
      if (j < 0 || j >= n) throw std::logic_error("parent id out of range");
    if (noise[i] < 0.0 || noise[i] > 1.0) throw std::logic_error("noise outside [0,1]");
    tables[i].validate();
  }
}

AdjacencyMatrix BooleanNetwork::adjacency() const {
  AdjacencyMatrix a(n, std::vector<std::uint8_t>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j : neighbors[i]) a[i][j] = 1;
  return a;
}

std::vector<std::vector<int>> neighbors_from_adjacency(const AdjacencyMatrix& a) {
  std::vector<std::vector<int>> nb(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j]) nb[i].push_back(static_cast<int>(j));
  return nb;
}

std::string BooleanNetwork::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["neighbors"] = neighbors;
  nlohmann::json jt = nlohmann::json::array();
  for (const auto& t : tables) jt.push_back({{"arity", t.arity}, {"entries", t.bits_string()}});
  j["tables"] = jt;
  j["noise"] = noise;
  return j.dump(2) + "\n";
}

BooleanNetwork BooleanNetwork::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("network JSON parse error: ") + e.what());
  }
  BooleanNetwork net;
  try {
    net.n = j.at("n").get<int>();
    net.neighbors = j.at("neighbors").get<std::vector<std::vector<int>>>();
    for (const auto& jt : j.at("tables"))
      net.tables.push_back(
          BooleanTable::from_bits(jt.at("arity").get<int>(), jt.at("entries").get<std::string>()));
    net.noise = j.at("noise").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("network JSON field error: ") + e.what());
  }
  try {
    net.validate();
  } catch (const std::logic_error& e) {
    throw DataError(std::string("invalid network: ") + e.what());
  }
  return net;
}

State step_network(const BooleanNetwork& net, const State& state, Pcg32& rng, NaPolicy na_policy) {
  if (static_cast<int>(state.size()) != net.n)
    throw std::invalid_argument("state length does not match node count");
  State out(net.n);
  std::vector<std::uint8_t> local;
  for (int i = 0; i < net.n; ++i) {
    local.clear();
    for (int j : net.neighbors[i]) local.push_back(state[j]);
    out[i] = static_cast<std::uint8_t>(
        eval_stochastic(net.tables[i], local, net.noise[i], rng, na_policy));
  }
  return out;
}

std::vector<State> simulate(const BooleanNetwork& net, const State& init, std::size_t steps,
                            Pcg32& rng, NaPolicy na_policy) {
  if (steps < 1) throw std::invalid_argument("simulation needs at least one step");
  std::vector<State> series;
  series.reserve(steps + 1);
  series.push_back(init);
  for (std::size_t t = 0; t < steps; ++t)
    series.push_back(step_network(net, series.back(), rng, na_policy));
  return series;
}

Dataset pairs_from_timeseries(const std::vector<State>& series) {
  if (series.size() < 2) throw DataError("time series must contain at least two states");
  std::size_t n = series[0].size();
  std::size_t rows = series.size() - 1;
  std::vector<std::vector<std::uint8_t>> in(n), out(n);
  for (auto& c : in) c.reserve(rows);
  for (auto& c : out) c.reserve(rows);
  for (std::size_t t = 0; t < rows; ++t) {
    if (series[t].size() != n || series[t + 1].size() != n)
      throw DataError("ragged state sequence");
    for (std::size_t j = 0; j < n; ++j) {
      in[j].push_back(series[t][j]);
      out[j].push_back(series[t + 1][j]);
    }
  }
  return Dataset(rows, std::move(in), std::move(out), std::vector<std::uint16_t>(n, 2));
}

BooleanNetwork random_network(int n, int in_degree, Pcg32& rng, bool include_self) {
  int max_degree = include_self ? n : n - 1;
  if (n < 1 || in_degree < 1 || in_degree > max_degree)
    throw std::invalid_argument("in-degree out of range for the node count");
  BooleanNetwork net;
  net.n = n;
  net.neighbors.resize(n);
  net.noise.assign(n, 0.0);
  std::vector<int> pool;
  for (int i = 0; i < n; ++i) {
    pool.clear();
    for (int j = 0; j < n; ++j)
      if (include_self || j != i) pool.push_back(j);
    // partial Fisher-Yates: first K slots become the parent sample
    for (int k = 0; k < in_degree; ++k) {
      std::uint32_t r = rng.next_below(static_cast<std::uint32_t>(pool.size() - k));
      std::swap(pool[k], pool[k + r]);
    }
    std::vector<int> parents(pool.begin(), pool.begin() + in_degree);
    std::sort(parents.begin(), parents.end());
    net.neighbors[i] = std::move(parents);

    std::string bits(std::size_t{1} << in_degree, '0');
    for (auto& c : bits) c = rng.next_bit() ? '1' : '0';
    net.tables.push_back(BooleanTable::from_bits(in_degree, bits));
  }
  return net;
}

}  // namespace bocse

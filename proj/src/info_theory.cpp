#include "bocse/info_theory.hpp"

#include "bocse/rng.hpp"

#include <bit>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace bocse {

ColumnSet::ColumnSet(const Dataset& data, std::vector<ColumnRef> refs)
    : data_(&data), refs_(std::move(refs)) {
  for (const auto& r : refs_) {
    if (r.kind == ColumnRef::Kind::Input && r.index >= data.num_inputs())
      throw std::invalid_argument("input column out of range");
    if (r.kind == ColumnRef::Kind::Output && r.index >= data.num_outputs())
      throw std::invalid_argument("output column out of range");
  }
}

ColumnSet ColumnSet::inputs(const Dataset& data, const std::vector<int>& cols) {
  std::vector<ColumnRef> refs;
  refs.reserve(cols.size());
  for (int c : cols) refs.push_back(ColumnRef::input(static_cast<std::size_t>(c)));
  return ColumnSet(data, std::move(refs));
}

ColumnSet ColumnSet::output(const Dataset& data, std::size_t col) {
  return ColumnSet(data, {ColumnRef::output(col)});
}

std::size_t ColumnSet::rows() const {
  if (!data_) throw std::invalid_argument("column set has no dataset");
  return data_->rows();
}

std::span<const std::uint8_t> ColumnSet::column(std::size_t i) const {
  const auto& r = refs_.at(i);
  const auto& col = r.kind == ColumnRef::Kind::Input ? data_->input(r.index) : data_->output(r.index);
  return {col.data(), col.size()};
}

std::uint16_t ColumnSet::alphabet(std::size_t i) const {
  const auto& r = refs_.at(i);
  return r.kind == ColumnRef::Kind::Input ? data_->alphabet_size(r.index) : 2;
}

int ColumnSet::width(std::size_t i) const {
  std::uint16_t a = alphabet(i);
  return a <= 2 ? 1 : std::bit_width(static_cast<unsigned>(a - 1));
}

ColumnSet ColumnSet::concat(const ColumnSet& other) const {
  if (empty()) return other;
  if (other.empty()) return *this;
  if (data_ != other.data_)
    throw std::invalid_argument("column sets reference different datasets");
  std::vector<ColumnRef> refs = refs_;
  refs.insert(refs.end(), other.refs_.begin(), other.refs_.end());
  return ColumnSet(*data_, std::move(refs));
}

double n_log2_n(std::uint64_t n) {
  static constexpr std::size_t kTableSize = 1 << 16;
  static std::vector<double> table;
  static std::once_flag once;
  std::call_once(once, [] {
    table.resize(kTableSize);
    table[0] = 0.0;
    for (std::size_t i = 1; i < kTableSize; ++i)
      table[i] = static_cast<double>(i) * std::log2(static_cast<double>(i));
  });
  if (n < kTableSize) return table[n];
  return static_cast<double>(n) * std::log2(static_cast<double>(n));
}

namespace detail {

double clamp_information(double v) { return (v < 0.0 && v >= -1e-12) ? 0.0 : v; }

double pattern_nlogn_sum(std::span<const std::uint64_t> keys) {
  std::unordered_map<std::uint64_t, std::uint32_t> counts;
  counts.reserve(keys.size() * 2);
  for (std::uint64_t k : keys) ++counts[k];
  double s = 0.0;
  for (const auto& [k, c] : counts) s += n_log2_n(c);
  return s;
}

}  // namespace detail

namespace {

// Packs all rows into joint keys. When the total width exceeds 64 the
// surplus columns are folded through a hash; collisions are not a
// correctness concern at the dataset sizes involved (<= 2^20 rows vs a
// 64-bit space), and every supported pipeline stays within 64 bits.
void pack_keys(const ColumnSet& cols, std::vector<std::uint64_t>& keys) {
  std::size_t rows = cols.rows();
  keys.assign(rows, 0);
  int shift = 0;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    auto col = cols.column(i);
    int w = cols.width(i);
    if (shift + w <= 64) {
      for (std::size_t t = 0; t < rows; ++t)
        keys[t] |= static_cast<std::uint64_t>(col[t]) << shift;
      shift += w;
    } else {
      for (std::size_t t = 0; t < rows; ++t) {
        std::uint64_t s = keys[t] ^ (0x9e3779b97f4a7c15ULL * (col[t] + 1));
        keys[t] = splitmix64(s);
      }
      shift = 64;
    }
  }
}

double entropy_impl(const ColumnSet& cols) {
  std::size_t rows = cols.rows();
  if (rows == 0) throw DataError("entropy of an empty dataset");
  if (cols.empty()) return 0.0;
  std::vector<std::uint64_t> keys;
  pack_keys(cols, keys);
  double t = static_cast<double>(rows);
  double h = std::log2(t) - detail::pattern_nlogn_sum(keys) / t;
  return h < 0.0 ? 0.0 : h;  // rounding hygiene
}

void check_same_dataset(const ColumnSet& a, const ColumnSet& b) {
  if (!a.empty() && !b.empty() && a.dataset() != b.dataset())
    throw std::invalid_argument("column sets reference different datasets");
}

}  // namespace

double entropy(const ColumnSet& cols) { return entropy_impl(cols); }

double conditional_entropy(const ColumnSet& y, const ColumnSet& x) {
  check_same_dataset(y, x);
  if (x.empty()) return entropy_impl(y);
  double h = entropy_impl(x.concat(y)) - entropy_impl(x);
  return h < 0.0 ? 0.0 : h;
}

double mutual_information(const ColumnSet& x, const ColumnSet& y) {
  check_same_dataset(x, y);
  double v = entropy_impl(x) + entropy_impl(y) - entropy_impl(x.concat(y));
  return detail::clamp_information(v);
}

double conditional_mutual_information(const ColumnSet& x, const ColumnSet& y, const ColumnSet& z) {
  check_same_dataset(x, y);
  check_same_dataset(x, z);
  check_same_dataset(y, z);
  if (z.empty()) return mutual_information(x, y);
  double v = entropy_impl(x.concat(z)) + entropy_impl(y.concat(z)) -
             entropy_impl(x.concat(y).concat(z)) - entropy_impl(z);
  return detail::clamp_information(v);
}

namespace detail {

DenseCells make_dense_cells(const ColumnSet& y, const ColumnSet& z) {
  DenseCells cells;
  cells.rows = y.rows();
  std::vector<std::uint32_t> yid;
  cells.nz = static_cast<std::uint32_t>(dense_pattern_ids(z, cells.zid));
  cells.ny = static_cast<std::uint32_t>(dense_pattern_ids(y, yid));
  cells.yzid.resize(cells.rows);
  cells.cell_count.assign(static_cast<std::size_t>(cells.nz) * cells.ny, 0);
  std::vector<std::uint32_t> z_count(cells.nz, 0);
  for (std::size_t t = 0; t < cells.rows; ++t) {
    cells.yzid[t] = cells.zid[t] * cells.ny + yid[t];
    ++cells.cell_count[cells.yzid[t]];
    ++z_count[cells.zid[t]];
  }
  double s_z = 0.0, s_yz = 0.0;
  for (std::uint32_t c : z_count) s_z += n_log2_n(c);
  for (std::uint32_t c : cells.cell_count) s_yz += n_log2_n(c);
  cells.fixed_sum = s_z - s_yz;
  return cells;
}

void count_xyz(const DenseCells& cells, std::span<const std::uint8_t> x, std::uint32_t ax,
               std::vector<std::uint32_t>& n_xyz) {
  std::size_t nyz = static_cast<std::size_t>(cells.nz) * cells.ny;
  n_xyz.assign(static_cast<std::size_t>(ax) * nyz, 0);
  for (std::size_t t = 0; t < cells.rows; ++t)
    ++n_xyz[static_cast<std::size_t>(x[t]) * nyz + cells.yzid[t]];
}

double cmi_from_counts(const DenseCells& cells, const std::vector<std::uint32_t>& n_xyz,
                       std::uint32_t ax) {
  double s_xyz = 0.0, s_xz = 0.0;
  std::size_t nyz = static_cast<std::size_t>(cells.nz) * cells.ny;
  for (std::uint32_t sym = 0; sym < ax; ++sym) {
    const std::uint32_t* row = n_xyz.data() + static_cast<std::size_t>(sym) * nyz;
    for (std::uint32_t zc = 0; zc < cells.nz; ++zc) {
      std::uint32_t xz = 0;
      for (std::uint32_t yc = 0; yc < cells.ny; ++yc) {
        std::uint32_t c = row[zc * cells.ny + yc];
        s_xyz += n_log2_n(c);
        xz += c;
      }
      s_xz += n_log2_n(xz);
    }
  }
  double v = (s_xyz + cells.fixed_sum - s_xz) / static_cast<double>(cells.rows);
  return clamp_information(v);
}

}  // namespace detail

std::size_t dense_pattern_ids(const ColumnSet& cols, std::vector<std::uint32_t>& ids) {
  std::size_t rows = cols.rows();
  ids.assign(rows, 0);
  if (cols.empty()) return 1;
  std::vector<std::uint64_t> keys;
  pack_keys(cols, keys);
  std::unordered_map<std::uint64_t, std::uint32_t> dense;
  dense.reserve(rows * 2);
  std::uint32_t next = 0;
  for (std::size_t t = 0; t < rows; ++t) {
    auto [it, inserted] = dense.try_emplace(keys[t], next);
    if (inserted) ++next;
    ids[t] = it->second;
  }
  return next;
}

}  // namespace bocse

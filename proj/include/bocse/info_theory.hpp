#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bocse/dataset.hpp"

namespace bocse {

// A column reference into a Dataset: input column j or output column j.
struct ColumnRef {
  enum class Kind { Input, Output } kind;
  std::size_t index;

  static ColumnRef input(std::size_t j) { return {Kind::Input, j}; }
  static ColumnRef output(std::size_t j) { return {Kind::Output, j}; }
  bool operator==(const ColumnRef&) const = default;
};

// An ordered list of columns of one dataset. Zero columns is allowed
// and denotes the empty conditioning set.
class ColumnSet {
 public:
  ColumnSet() = default;
  ColumnSet(const Dataset& data, std::vector<ColumnRef> refs);

  static ColumnSet inputs(const Dataset& data, const std::vector<int>& cols);
  static ColumnSet output(const Dataset& data, std::size_t col);

  const Dataset* dataset() const { return data_; }
  std::size_t rows() const;
  std::size_t size() const { return refs_.size(); }
  bool empty() const { return refs_.empty(); }
  const std::vector<ColumnRef>& refs() const { return refs_; }

  // Raw column pointer and the bit width needed for its symbols.
  std::span<const std::uint8_t> column(std::size_t i) const;
  int width(std::size_t i) const;
  std::uint16_t alphabet(std::size_t i) const;

  ColumnSet concat(const ColumnSet& other) const;

 private:
  const Dataset* data_ = nullptr;
  std::vector<ColumnRef> refs_;
};

// Plug-in (empirical frequency) estimators, in bits. Joint patterns
// are keyed by packing symbols into a 64-bit word when the total bit
// width allows, else by a byte-tuple hash.
double entropy(const ColumnSet& cols);
double conditional_entropy(const ColumnSet& y, const ColumnSet& x);
double mutual_information(const ColumnSet& x, const ColumnSet& y);
double conditional_mutual_information(const ColumnSet& x, const ColumnSet& y, const ColumnSet& z);

// n * log2(n) with a cached table for small n; 0 for n = 0.
double n_log2_n(std::uint64_t n);

// Dense joint-pattern ids for a column set: fills `ids` with values in
// [0, return value). An empty set yields all-zero ids (one cell).
std::size_t dense_pattern_ids(const ColumnSet& cols, std::vector<std::uint32_t>& ids);

namespace detail {
// Sum of n*log2(n) over the joint-pattern counts of packed keys.
double pattern_nlogn_sum(std::span<const std::uint64_t> keys);
// Clamp floating-point negatives in [-1e-12, 0) to zero.
double clamp_information(double v);

// Dense (Y,Z)-cell coding shared by the repeated-CMI scans: the
// forward/backward candidate sweeps and the permutation null both
// evaluate I(X;Y|Z) for many X against one fixed (Y,Z).
struct DenseCells {
  std::size_t rows = 0;
  std::vector<std::uint32_t> zid;         // dense z pattern per row
  std::vector<std::uint32_t> yzid;        // zid * ny + yid per row
  std::uint32_t nz = 1, ny = 1;
  std::vector<std::uint32_t> cell_count;  // observations per yz cell
  double fixed_sum = 0.0;                 // S_z - S_yz
};

DenseCells make_dense_cells(const ColumnSet& y, const ColumnSet& z);

void count_xyz(const DenseCells& cells, std::span<const std::uint8_t> x, std::uint32_t ax,
               std::vector<std::uint32_t>& n_xyz);

// I(X;Y|Z) = (S_xyz + S_z - S_xz - S_yz) / T from the counts.
double cmi_from_counts(const DenseCells& cells, const std::vector<std::uint32_t>& n_xyz,
                       std::uint32_t ax);
}  // namespace detail

}  // namespace bocse

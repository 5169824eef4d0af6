#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bocse {

// Raised for malformed input files and inconsistent data; the CLI maps
// it to exit code 2.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// T samples of n categorical input columns plus l Boolean output
// columns. Columns are stored column-major; symbols are small
// integers, strictly below the column's alphabet size.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::size_t rows, std::vector<std::vector<std::uint8_t>> input_cols,
          std::vector<std::vector<std::uint8_t>> output_cols,
          std::vector<std::uint16_t> alphabet_sizes);

  std::size_t rows() const { return rows_; }
  std::size_t num_inputs() const { return inputs_.size(); }
  std::size_t num_outputs() const { return outputs_.size(); }

  const std::vector<std::uint8_t>& input(std::size_t j) const { return inputs_.at(j); }
  const std::vector<std::uint8_t>& output(std::size_t j) const { return outputs_.at(j); }
  std::uint16_t alphabet_size(std::size_t j) const { return alphabet_sizes_.at(j); }
  const std::vector<std::uint16_t>& alphabet_sizes() const { return alphabet_sizes_; }

  std::vector<std::string> input_names;  // optional; empty when unnamed
  std::vector<std::string> output_names;

  // First `t` rows, same columns.
  Dataset prefix(std::size_t t) const;
  // Rows at the given indices, in order (used by down-sampling).
  Dataset select_rows(const std::vector<std::uint32_t>& idx) const;

  // Canonical serialization: JSON header plus base64 packed row-major
  // sample matrix (inputs then outputs per row).
  std::string to_json() const;
  static Dataset from_json(const std::string& text);

  void validate() const;

 private:
  std::size_t rows_ = 0;
  std::vector<std::vector<std::uint8_t>> inputs_;
  std::vector<std::vector<std::uint8_t>> outputs_;
  std::vector<std::uint16_t> alphabet_sizes_;
};

// Builds a dataset from row-major input/output bit or symbol rows.
Dataset make_dataset(const std::vector<std::vector<std::uint8_t>>& input_rows,
                     const std::vector<std::vector<std::uint8_t>>& output_rows,
                     std::vector<std::uint16_t> alphabet_sizes = {});

}  // namespace bocse

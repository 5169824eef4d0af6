#include "bocse/dataset.hpp"

#include <json.hpp>

namespace bocse {

namespace {

const char kB64[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(const std::vector<std::uint8_t>& in) {
  std::string out;
  out.reserve((in.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 3 <= in.size(); i += 3) {
    std::uint32_t v = (in[i] << 16) | (in[i + 1] << 8) | in[i + 2];
    out += kB64[(v >> 18) & 63];
    out += kB64[(v >> 12) & 63];
    out += kB64[(v >> 6) & 63];
    out += kB64[v & 63];
  }
  if (i + 1 == in.size()) {
    std::uint32_t v = in[i] << 16;
    out += kB64[(v >> 18) & 63];
    out += kB64[(v >> 12) & 63];
    out += "==";
  } else if (i + 2 == in.size()) {
    std::uint32_t v = (in[i] << 16) | (in[i + 1] << 8);
    out += kB64[(v >> 18) & 63];
    out += kB64[(v >> 12) & 63];
    out += kB64[(v >> 6) & 63];
    out += '=';
  }
  return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& in) {
  std::array<std::int8_t, 256> lut;
  lut.fill(-1);
  for (int i = 0; i < 64; ++i) lut[static_cast<unsigned char>(kB64[i])] = static_cast<std::int8_t>(i);
  std::vector<std::uint8_t> out;
  out.reserve(in.size() / 4 * 3);
  std::uint32_t acc = 0;
  int bits = 0;
  for (char c : in) {
    if (c == '=' || c == '\n' || c == '\r') continue;
    std::int8_t v = lut[static_cast<unsigned char>(c)];
    if (v < 0) throw DataError("invalid base64 character in dataset payload");
    acc = (acc << 6) | static_cast<std::uint32_t>(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<std::uint8_t>((acc >> bits) & 0xff));
    }
  }
  return out;
}

}  // namespace

Dataset::Dataset(std::size_t rows, std::vector<std::vector<std::uint8_t>> input_cols,
                 std::vector<std::vector<std::uint8_t>> output_cols,
                 std::vector<std::uint16_t> alphabet_sizes)
    : rows_(rows),
      inputs_(std::move(input_cols)),
      outputs_(std::move(output_cols)),
      alphabet_sizes_(std::move(alphabet_sizes)) {
  if (alphabet_sizes_.empty()) alphabet_sizes_.assign(inputs_.size(), 2);
  validate();
}

void Dataset::validate() const {
  if (rows_ == 0) throw DataError("dataset must contain at least one row");
  if (alphabet_sizes_.size() != inputs_.size())
    throw DataError("alphabet size list does not match the input column count");
  for (std::size_t j = 0; j < inputs_.size(); ++j) {
    if (inputs_[j].size() != rows_) throw DataError("ragged input column");
    std::uint16_t a = alphabet_sizes_[j];
    if (a < 1 || a > 256) throw DataError("alphabet size out of range");
    for (std::uint8_t v : inputs_[j])
      if (v >= a) throw DataError("input symbol exceeds its column alphabet");
  }
  for (const auto& col : outputs_) {
    if (col.size() != rows_) throw DataError("ragged output column");
    for (std::uint8_t v : col)
      if (v > 1) throw DataError("output symbol is not Boolean");
  }
}

Dataset Dataset::prefix(std::size_t t) const {
  if (t < 1 || t > rows_) throw DataError("prefix length out of range");
  std::vector<std::vector<std::uint8_t>> in(inputs_.size()), out(outputs_.size());
  for (std::size_t j = 0; j < inputs_.size(); ++j)
    in[j].assign(inputs_[j].begin(), inputs_[j].begin() + static_cast<long>(t));
  for (std::size_t j = 0; j < outputs_.size(); ++j)
    out[j].assign(outputs_[j].begin(), outputs_[j].begin() + static_cast<long>(t));
  Dataset d(t, std::move(in), std::move(out), alphabet_sizes_);
  d.input_names = input_names;
  d.output_names = output_names;
  return d;
}

Dataset Dataset::select_rows(const std::vector<std::uint32_t>& idx) const {
  if (idx.empty()) throw DataError("row selection must be non-empty");
  std::vector<std::vector<std::uint8_t>> in(inputs_.size()), out(outputs_.size());
  for (std::size_t j = 0; j < inputs_.size(); ++j) {
    in[j].reserve(idx.size());
    for (std::uint32_t t : idx) in[j].push_back(inputs_[j].at(t));
  }
  for (std::size_t j = 0; j < outputs_.size(); ++j) {
    out[j].reserve(idx.size());
    for (std::uint32_t t : idx) out[j].push_back(outputs_[j].at(t));
  }
  Dataset d(idx.size(), std::move(in), std::move(out), alphabet_sizes_);
  d.input_names = input_names;
  d.output_names = output_names;
  return d;
}

std::string Dataset::to_json() const {
  nlohmann::json j;
  j["type"] = "bocse-dataset";
  j["version"] = 1;
  j["rows"] = rows_;
  j["inputs"] = inputs_.size();
  j["outputs"] = outputs_.size();
  j["alphabetSizes"] = alphabet_sizes_;
  if (!input_names.empty()) j["inputNames"] = input_names;
  if (!output_names.empty()) j["outputNames"] = output_names;
  std::vector<std::uint8_t> packed;
  packed.reserve(rows_ * (inputs_.size() + outputs_.size()));
  for (std::size_t t = 0; t < rows_; ++t) {
    for (const auto& col : inputs_) packed.push_back(col[t]);
    for (const auto& col : outputs_) packed.push_back(col[t]);
  }
  j["data"] = base64_encode(packed);
  return j.dump(2) + "\n";
}

Dataset Dataset::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("dataset JSON parse error: ") + e.what());
  }
  if (j.value("type", "") != "bocse-dataset") throw DataError("not a bocse dataset file");
  std::size_t rows = j.at("rows").get<std::size_t>();
  std::size_t n = j.at("inputs").get<std::size_t>();
  std::size_t l = j.at("outputs").get<std::size_t>();
  auto alphabets = j.at("alphabetSizes").get<std::vector<std::uint16_t>>();
  auto packed = base64_decode(j.at("data").get<std::string>());
  if (packed.size() != rows * (n + l)) throw DataError("dataset payload size mismatch");
  std::vector<std::vector<std::uint8_t>> in(n), out(l);
  for (auto& c : in) c.resize(rows);
  for (auto& c : out) c.resize(rows);
  std::size_t p = 0;
  for (std::size_t t = 0; t < rows; ++t) {
    for (std::size_t jj = 0; jj < n; ++jj) in[jj][t] = packed[p++];
    for (std::size_t jj = 0; jj < l; ++jj) out[jj][t] = packed[p++];
  }
  Dataset d(rows, std::move(in), std::move(out), std::move(alphabets));
  if (j.contains("inputNames")) d.input_names = j["inputNames"].get<std::vector<std::string>>();
  if (j.contains("outputNames")) d.output_names = j["outputNames"].get<std::vector<std::string>>();
  return d;
}

Dataset make_dataset(const std::vector<std::vector<std::uint8_t>>& input_rows,
                     const std::vector<std::vector<std::uint8_t>>& output_rows,
                     std::vector<std::uint16_t> alphabet_sizes) {
  if (input_rows.empty()) throw DataError("dataset must contain at least one row");
  if (input_rows.size() != output_rows.size()) throw DataError("input/output row counts differ");
  std::size_t rows = input_rows.size();
  std::size_t n = input_rows[0].size();
  std::size_t l = output_rows[0].size();
  std::vector<std::vector<std::uint8_t>> in(n), out(l);
  for (auto& c : in) c.reserve(rows);
  for (auto& c : out) c.reserve(rows);
  for (std::size_t t = 0; t < rows; ++t) {
    if (input_rows[t].size() != n || output_rows[t].size() != l)
      throw DataError("ragged sample row");
    for (std::size_t j = 0; j < n; ++j) in[j].push_back(input_rows[t][j]);
    for (std::size_t j = 0; j < l; ++j) out[j].push_back(output_rows[t][j]);
  }
  if (alphabet_sizes.empty()) {
    alphabet_sizes.assign(n, 2);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t t = 0; t < rows; ++t)
        if (in[j][t] >= alphabet_sizes[j]) alphabet_sizes[j] = static_cast<std::uint16_t>(in[j][t] + 1);
  }
  return Dataset(rows, std::move(in), std::move(out), std::move(alphabet_sizes));
}

}  // namespace bocse

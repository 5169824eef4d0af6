#include "bocse/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace bocse {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Normalizes the encodings seen in UCI archives: UTF-8 (with or
// without BOM) and UTF-16 LE/BE. Non-ASCII payload is not expected.
std::string decode_text(std::string raw) {
  auto u = [&](std::size_t i) { return static_cast<unsigned char>(raw[i]); };
  if (raw.size() >= 3 && u(0) == 0xEF && u(1) == 0xBB && u(2) == 0xBF) return raw.substr(3);
  bool le = raw.size() >= 2 && u(0) == 0xFF && u(1) == 0xFE;
  bool be = raw.size() >= 2 && u(0) == 0xFE && u(1) == 0xFF;
  if (!le && !be) return raw;
  std::string out;
  out.reserve(raw.size() / 2);
  for (std::size_t i = 2; i + 1 < raw.size(); i += 2) {
    unsigned code = le ? (u(i) | (u(i + 1) << 8)) : ((u(i) << 8) | u(i + 1));
    if (code != 0) out += code < 128 ? static_cast<char>(code) : '?';
  }
  return out;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() && cur.back() == '\r') cur.pop_back();
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

// CSV row with quoted-field support (LendingClub exports quote fields
// containing commas).
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double parse_decimal(const std::string& field, std::size_t line_no) {
  std::string s = trim(field);
  std::replace(s.begin(), s.end(), ',', '.');  // decimal comma tolerated
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError("line " + std::to_string(line_no) + ": cannot parse number '" + field + "'");
  }
}

std::uint8_t parse_yes_no(const std::string& field, std::size_t line_no) {
  std::string s = lower(trim(field));
  if (s == "yes") return 1;
  if (s == "no") return 0;
  throw DataError("line " + std::to_string(line_no) + ": expected yes/no, got '" + field + "'");
}

}  // namespace

LabeledDataset load_acute_inflammations(const std::string& path) {
  auto lines = split_lines(decode_text(read_file(path)));
  std::vector<std::vector<std::uint8_t>> in_rows, out_rows;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) continue;
    auto fields = split(lines[li], '\t');
    if (fields.size() != 8)
      throw DataError("line " + std::to_string(li + 1) + ": expected 8 tab-separated fields, got " +
                      std::to_string(fields.size()));
    double temp = parse_decimal(fields[0], li + 1);
    std::vector<std::uint8_t> in{static_cast<std::uint8_t>(temp >= 38.0 ? 1 : 0)};
    for (int f = 1; f <= 5; ++f) in.push_back(parse_yes_no(fields[f], li + 1));
    std::vector<std::uint8_t> out{parse_yes_no(fields[6], li + 1), parse_yes_no(fields[7], li + 1)};
    in_rows.push_back(std::move(in));
    out_rows.push_back(std::move(out));
  }
  if (in_rows.size() != 120)
    std::cerr << "warning: " << path << ": expected 120 patient rows, found " << in_rows.size()
              << "\n";

  LabeledDataset ds;
  ds.data = make_dataset(in_rows, out_rows, std::vector<std::uint16_t>(6, 2));
  ds.data.input_names = {"fever",            "nausea",           "lumbar pain",
                         "urine pushing",    "micturition pains", "urethra burning"};
  ds.data.output_names = {"bladder inflammation", "nephritis"};
  ds.provenance = {"temperature thresholded at >= 38.0 C", "yes/no", "yes/no",
                   "yes/no",                               "yes/no", "yes/no"};
  return ds;
}

LabeledDataset load_spect_file(const std::string& path) {
  auto lines = split_lines(decode_text(read_file(path)));
  std::vector<std::vector<std::uint8_t>> in_rows, out_rows;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) continue;
    auto fields = split(lines[li], ',');
    if (fields.size() != 23)
      throw DataError("line " + std::to_string(li + 1) +
                      ": expected 23 comma-separated fields, got " + std::to_string(fields.size()));
    std::vector<std::uint8_t> row;
    for (const auto& f : fields) {
      std::string s = trim(f);
      if (s != "0" && s != "1")
        throw DataError("line " + std::to_string(li + 1) + ": expected binary field, got '" + f +
                        "'");
      row.push_back(static_cast<std::uint8_t>(s == "1" ? 1 : 0));
    }
    out_rows.push_back({row[0]});  // diagnosis first
    in_rows.push_back({row.begin() + 1, row.end()});
  }
  if (in_rows.empty()) throw DataError(path + ": no data rows");
  LabeledDataset ds;
  ds.data = make_dataset(in_rows, out_rows, std::vector<std::uint16_t>(22, 2));
  for (int f = 1; f <= 22; ++f) ds.data.input_names.push_back("F" + std::to_string(f));
  ds.data.output_names = {"normal"};
  ds.provenance.assign(22, "binary partial diagnosis flag");
  return ds;
}

std::pair<LabeledDataset, LabeledDataset> load_spect(const std::string& train_path,
                                                     const std::string& test_path) {
  LabeledDataset train = load_spect_file(train_path);
  LabeledDataset test = load_spect_file(test_path);
  if (train.data.rows() != 80)
    std::cerr << "warning: " << train_path << ": expected 80 training rows, found "
              << train.data.rows() << "\n";
  if (test.data.rows() != 187)
    std::cerr << "warning: " << test_path << ": expected 187 test rows, found " << test.data.rows()
              << "\n";
  return {std::move(train), std::move(test)};
}

LabeledDataset load_tictactoe(const std::string& path) {
  auto lines = split_lines(decode_text(read_file(path)));
  std::vector<std::vector<std::uint8_t>> in_rows, out_rows;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) continue;
    auto fields = split(lines[li], ',');
    if (fields.size() != 10)
      throw DataError("line " + std::to_string(li + 1) + ": expected 10 fields, got " +
                      std::to_string(fields.size()));
    std::vector<std::uint8_t> row;
    for (int f = 0; f < 9; ++f) {
      std::string s = lower(trim(fields[f]));
      if (s == "b") row.push_back(0);
      else if (s == "o") row.push_back(1);
      else if (s == "x") row.push_back(2);
      else
        throw DataError("line " + std::to_string(li + 1) + ": unknown board symbol '" + fields[f] +
                        "'");
    }
    std::string label = lower(trim(fields[9]));
    if (label != "positive" && label != "negative")
      throw DataError("line " + std::to_string(li + 1) + ": unknown label '" + fields[9] + "'");
    in_rows.push_back(std::move(row));
    out_rows.push_back({static_cast<std::uint8_t>(label == "positive" ? 1 : 0)});
  }
  if (in_rows.size() != 958)
    std::cerr << "warning: " << path << ": expected 958 endgame rows, found " << in_rows.size()
              << "\n";
  LabeledDataset ds;
  ds.data = make_dataset(in_rows, out_rows, std::vector<std::uint16_t>(9, 3));
  ds.data.input_names = {"upper-left", "upper-middle", "upper-right", "middle-left", "center",
                         "middle-right", "lower-left", "lower-middle", "lower-right"};
  ds.data.output_names = {"x wins"};
  ds.provenance.assign(9, "board cell; b->0, o->1, x->2 (paper labels: 0, -1, 1)");
  return ds;
}

LendingClubMapping LendingClubMapping::from_json_file(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("mapping JSON parse error: ") + e.what());
  }
  LendingClubMapping m;
  auto get = [&](const char* key, std::string& slot) {
    if (j.contains(key)) slot = j[key].get<std::string>();
  };
  get("loan_status", m.loan_status);
  get("home_ownership", m.home_ownership);
  get("delinq_2yrs", m.delinq_2yrs);
  get("verification_status", m.verification_status);
  get("pub_rec", m.pub_rec);
  get("application_type", m.application_type);
  get("past_due_120", m.past_due_120);
  get("opened_12m", m.opened_12m);
  get("bankruptcies", m.bankruptcies);
  get("loan_amount", m.loan_amount);
  get("annual_income", m.annual_income);
  get("term", m.term);
  return m;
}

LabeledDataset load_lendingclub(const std::string& path, std::optional<double> threshold,
                                const LendingClubMapping& mapping) {
  auto lines = split_lines(decode_text(read_file(path)));
  std::size_t header_idx = 0;
  // Official exports carry a notes line before the header.
  while (header_idx < lines.size() &&
         lower(lines[header_idx]).find(lower(mapping.loan_status)) == std::string::npos)
    ++header_idx;
  if (header_idx == lines.size()) throw DataError(path + ": header row not found");
  auto header = split_csv(lines[header_idx]);
  std::unordered_map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[lower(trim(header[i]))] = i;

  auto need = [&](const std::string& name) {
    auto it = col.find(lower(name));
    if (it == col.end()) throw DataError(path + ": missing required column '" + name + "'");
    return it->second;
  };
  std::size_t c_status = need(mapping.loan_status);
  std::size_t c_home = need(mapping.home_ownership);
  std::size_t c_delinq = need(mapping.delinq_2yrs);
  std::size_t c_verif = need(mapping.verification_status);
  std::size_t c_pubrec = need(mapping.pub_rec);
  std::size_t c_app = need(mapping.application_type);
  std::size_t c_120 = need(mapping.past_due_120);
  std::size_t c_open12 = need(mapping.opened_12m);
  std::size_t c_bank = need(mapping.bankruptcies);
  std::size_t c_amount = need(mapping.loan_amount);
  std::size_t c_income = need(mapping.annual_income);
  std::size_t c_term = need(mapping.term);

  auto numeric_flag = [](const std::string& s) {
    if (trim(s).empty()) return std::uint8_t{0};
    return static_cast<std::uint8_t>(std::stod(trim(s)) > 0.0 ? 1 : 0);
  };

  std::vector<std::vector<std::uint8_t>> partial_rows;  // X1..X8, X10
  std::vector<std::uint8_t> labels;
  std::vector<double> ratios;
  std::size_t dropped_income = 0, dropped_status = 0;

  for (std::size_t li = header_idx + 1; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) continue;
    auto f = split_csv(lines[li]);
    if (f.size() < header.size()) {
      if (f.size() <= 1) continue;  // footer/total lines in official exports
      throw DataError("line " + std::to_string(li + 1) + ": truncated row");
    }
    std::string status = lower(trim(f[c_status]));
    std::uint8_t y;
    if (status == "fully paid") y = 1;
    else if (status == "charged off" || status == "default") y = 0;
    else {
      ++dropped_status;  // "Current" and other in-flight statuses
      continue;
    }
    std::string income_s = trim(f[c_income]);
    double income = income_s.empty() ? 0.0 : std::stod(income_s);
    if (income <= 0.0) {
      ++dropped_income;
      continue;
    }
    double amount = parse_decimal(f[c_amount], li + 1);

    std::string home = lower(trim(f[c_home]));
    std::string verif = lower(trim(f[c_verif]));
    std::string app = lower(trim(f[c_app]));
    std::string term = lower(trim(f[c_term]));

    std::vector<std::uint8_t> row;
    row.push_back(static_cast<std::uint8_t>(home == "own" || home == "mortgage" ? 1 : 0));
    row.push_back(numeric_flag(f[c_delinq]));
    row.push_back(static_cast<std::uint8_t>(verif == "verified" || verif == "source verified"));
    row.push_back(numeric_flag(f[c_pubrec]));
    row.push_back(static_cast<std::uint8_t>(app == "individual" ? 1 : 0));
    row.push_back(numeric_flag(f[c_120]));
    row.push_back(numeric_flag(f[c_open12]));
    row.push_back(numeric_flag(f[c_bank]));
    row.push_back(static_cast<std::uint8_t>(term.find("60") != std::string::npos ? 1 : 0));
    partial_rows.push_back(std::move(row));
    labels.push_back(y);
    ratios.push_back(amount / income);
  }
  if (partial_rows.empty()) throw DataError(path + ": no usable rows after status filtering");
  if (dropped_income > 0)
    std::cerr << "note: " << path << ": dropped " << dropped_income
              << " rows with zero/blank income\n";

  double mu;
  if (threshold) {
    mu = *threshold;
  } else {
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    std::size_t m = sorted.size();
    mu = m % 2 == 1 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  }

  std::vector<std::vector<std::uint8_t>> in_rows(partial_rows.size());
  std::vector<std::vector<std::uint8_t>> out_rows(partial_rows.size());
  for (std::size_t t = 0; t < partial_rows.size(); ++t) {
    auto& row = partial_rows[t];
    std::vector<std::uint8_t> full(row.begin(), row.begin() + 8);
    full.push_back(static_cast<std::uint8_t>(ratios[t] > mu ? 1 : 0));  // X9
    full.push_back(row[8]);                                             // X10
    in_rows[t] = std::move(full);
    out_rows[t] = {labels[t]};
  }

  LabeledDataset ds;
  ds.data = make_dataset(in_rows, out_rows, std::vector<std::uint16_t>(10, 2));
  ds.data.input_names = {"home ownership", "delinquency 2y",  "income verified",
                         "public records", "individual app",  "120 days past due",
                         "opened 12m",     "bankruptcies",    "loan-to-income > median",
                         "60-month term"};
  ds.data.output_names = {"fully paid"};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", mu);
  ds.provenance = {"home_ownership in {OWN, MORTGAGE}",
                   "delinq_2yrs > 0",
                   "verification_status verified",
                   "pub_rec > 0",
                   "application_type Individual",
                   "num_accts_ever_120_pd > 0",
                   "num_tl_op_past_12m > 0",
                   "pub_rec_bankruptcies > 0",
                   std::string("loan_amnt/annual_inc > mu = ") + buf,
                   "term contains 60"};
  return ds;
}

}  // namespace bocse

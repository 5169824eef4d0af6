#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bocse/dataset.hpp"

namespace bocse {

// A dataset plus attribute/outcome names and per-column provenance
// notes (raw column, threshold applied).
struct LabeledDataset {
  Dataset data;
  std::vector<std::string> provenance;  // one note per input column
};

// UCI Acute Inflammations: tab-separated, decimal-comma temperatures,
// yes/no attributes, two diagnosis columns. Temperature is thresholded
// at >= 38.0 into X1; outputs are Y1 bladder inflammation, Y2 nephritis.
LabeledDataset load_acute_inflammations(const std::string& path);

// UCI SPECT Heart: comma-separated, diagnosis label first then 22
// binary features; label 1 = normal.
std::pair<LabeledDataset, LabeledDataset> load_spect(const std::string& train_path,
                                                     const std::string& test_path);
LabeledDataset load_spect_file(const std::string& path);

// UCI Tic-Tac-Toe Endgame: nine x/o/b cells (row-major from the upper
// left) and a positive/negative label (positive = "x" wins). Symbols
// encode as b->0, o->1, x->2.
LabeledDataset load_tictactoe(const std::string& path);

// Field-name overrides for LendingClub exports whose headers differ
// from the 2019 vintage.
struct LendingClubMapping {
  std::string loan_status = "loan_status";
  std::string home_ownership = "home_ownership";
  std::string delinq_2yrs = "delinq_2yrs";
  std::string verification_status = "verification_status";
  std::string pub_rec = "pub_rec";
  std::string application_type = "application_type";
  std::string past_due_120 = "num_accts_ever_120_pd";
  std::string opened_12m = "num_tl_op_past_12m";
  std::string bankruptcies = "pub_rec_bankruptcies";
  std::string loan_amount = "loan_amnt";
  std::string annual_income = "annual_inc";
  std::string term = "term";

  static LendingClubMapping from_json_file(const std::string& path);
};

// Loan issuance data: keeps only loans with a final status (Fully Paid
// vs Charged Off/Default; "Current" and other in-flight statuses are
// excluded), drops zero/blank-income rows, and forms the ten Boolean
// attributes. X9 thresholds loan/income at `threshold` (default: the
// median over loaded rows).
LabeledDataset load_lendingclub(const std::string& path,
                                std::optional<double> threshold = std::nullopt,
                                const LendingClubMapping& mapping = {});

}  // namespace bocse

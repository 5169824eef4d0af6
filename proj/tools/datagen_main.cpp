// Deterministic generator for the datasets bundled under data/.
//
//   diagnosis.data    reconstruction of the UCI Acute Inflammations
//                     table from its published per-pattern statistics
//   tic-tac-toe.data  exact enumeration of the 958 legal terminal
//                     boards (the UCI Tic-Tac-Toe Endgame set)
//   SPECT.train/.test synthetic stand-in with the documented shape of
//                     the UCI SPECT Heart split (80 = 40+40 train,
//                     187 = 172+15 test, 22 binary features)
//
// Rerunning always reproduces the committed files byte for byte; a
// unit test enforces that.

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "bocse/rng.hpp"

namespace {

using bocse::Pcg32;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write " << path << "\n";
    std::exit(2);
  }
  out << content;
}

// ---------------------------------------------------------------- acute

struct AcuteRow {
  int x1, x2, x3, x4, x5, x6, y1, y2;
};

std::string make_acute() {
  // (X1,X3) block patterns and (X4,X5,X6) block patterns with the
  // published occurrence counts; the cross allocation is as close to
  // proportional as integers allow, keeping the blocks nearly
  // independent.
  const std::array<std::array<int, 2>, 4> a_pat{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
  const std::array<std::array<int, 3>, 6> b_pat{
      {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}}};
  const int cross[4][6] = {
      {10, 3, 3, 7, 7, 10},
      {5, 2, 2, 3, 3, 5},
      {3, 1, 1, 2, 1, 2},
      {12, 4, 4, 9, 9, 12},
  };
  // nausea accompanies fever; spread across the (X4,X5,X6) patterns
  const int nausea[4][6] = {
      {0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0},
      {2, 1, 0, 1, 0, 1},
      {6, 2, 2, 4, 4, 6},
  };

  std::vector<AcuteRow> rows;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 6; ++b) {
      for (int c = 0; c < cross[a][b]; ++c) {
        AcuteRow r;
        r.x1 = a_pat[a][0];
        r.x3 = a_pat[a][1];
        r.x2 = c < nausea[a][b] ? 1 : 0;
        r.x4 = b_pat[b][0];
        r.x5 = b_pat[b][1];
        r.x6 = b_pat[b][2];
        r.y1 = r.x4 && (r.x5 || !r.x6) ? 1 : 0;
        r.y2 = r.x1 && r.x3 ? 1 : 0;
        rows.push_back(r);
      }
    }
  }

  Pcg32 rng(0x5150AC01);
  for (std::size_t i = rows.size(); i > 1; --i)
    std::swap(rows[i - 1], rows[rng.next_below(static_cast<std::uint32_t>(i))]);

  const std::array<const char*, 9> afebrile{"35,5", "36,0", "36,2", "36,6", "36,9",
                                            "37,0", "37,2", "37,5", "37,9"};
  const std::array<const char*, 11> febrile{"38,0", "38,3", "38,5", "38,9", "39,0", "39,4",
                                            "39,7", "40,0", "40,4", "41,1", "41,5"};
  std::size_t lo = 0, hi = 0;
  auto yn = [](int v) { return v ? "yes" : "no"; };
  std::string out;
  for (const AcuteRow& r : rows) {
    const char* temp = r.x1 ? febrile[hi++ % febrile.size()] : afebrile[lo++ % afebrile.size()];
    out += temp;
    for (int v : {r.x2, r.x3, r.x4, r.x5, r.x6, r.y1, r.y2}) {
      out += '\t';
      out += yn(v);
    }
    out += "\r\n";
  }
  return out;
}

// ----------------------------------------------------------- tic-tac-toe

constexpr int kLines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                              {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}};

bool has_line(const std::array<char, 9>& b, char sym) {
  for (const auto& ln : kLines)
    if (b[ln[0]] == sym && b[ln[1]] == sym && b[ln[2]] == sym) return true;
  return false;
}

// The winner's final move must have created the win: some winning
// stone's removal leaves no completed line for that player.
bool win_by_last_move(std::array<char, 9> b, char sym) {
  for (int c = 0; c < 9; ++c) {
    if (b[c] != sym) continue;
    b[c] = 'b';
    bool still = has_line(b, sym);
    b[c] = sym;
    if (!still) return true;
  }
  return false;
}

std::string make_tictactoe() {
  std::vector<std::string> positive, negative;
  std::array<char, 9> b;
  const char symbols[3] = {'b', 'o', 'x'};
  for (int code = 0; code < 19683; ++code) {
    int v = code, nx = 0, no = 0;
    for (int c = 0; c < 9; ++c) {
      b[c] = symbols[v % 3];
      v /= 3;
      if (b[c] == 'x') ++nx;
      if (b[c] == 'o') ++no;
    }
    bool wx = has_line(b, 'x');
    bool wo = has_line(b, 'o');
    if (wx && wo) continue;
    bool terminal = false;
    if (wx) terminal = nx == no + 1 && win_by_last_move(b, 'x');
    else if (wo) terminal = nx == no && win_by_last_move(b, 'o');
    else terminal = nx == 5 && no == 4;
    if (!terminal) continue;

    std::string row;
    for (int c = 0; c < 9; ++c) {
      row += b[c];
      row += ',';
    }
    row += wx ? "positive" : "negative";
    (wx ? positive : negative).push_back(row);
  }

  // x < o < b, positives before negatives (the archive's layout)
  auto rank = [](char c) { return c == 'x' ? 0 : c == 'o' ? 1 : 2; };
  auto less = [&](const std::string& lhs, const std::string& rhs) {
    for (std::size_t i = 0; i < std::min(lhs.size(), rhs.size()); ++i) {
      if (lhs[i] == rhs[i]) continue;
      return rank(lhs[i]) < rank(rhs[i]);
    }
    return lhs.size() < rhs.size();
  };
  std::sort(positive.begin(), positive.end(), less);
  std::sort(negative.begin(), negative.end(), less);

  if (positive.size() != 626 || negative.size() != 332) {
    std::cerr << "tic-tac-toe enumeration produced " << positive.size() << "/" << negative.size()
              << " rows (expected 626/332)\n";
    std::exit(2);
  }
  std::string out;
  for (const auto& r : positive) out += r + "\n";
  for (const auto& r : negative) out += r + "\n";
  return out;
}

// ----------------------------------------------------------------- spect

struct SpectPatient {
  int label;
  std::array<int, 22> f;
};

std::string spect_lines(const std::vector<SpectPatient>& patients) {
  std::string out;
  for (const auto& p : patients) {
    out += std::to_string(p.label);
    for (int v : p.f) {
      out += ',';
      out += std::to_string(v);
    }
    out += "\n";
  }
  return out;
}

void make_spect(std::string& train, std::string& test) {
  Pcg32 rng(0x57EC7B00);
  // planted rule: three informative flags with graded noise, three
  // echo flags, the rest independent background at varied base rates
  const double base[22] = {0.55, 0.35, 0.45, 0.25, 0.60, 0.30, 0.0,  0.40, 0.50, 0.0,  0.65,
                           0.0,  0.20, 0.45, 0.35, 0.55, 0.0,  0.30, 0.25, 0.0,  0.40, 0.50};
  std::vector<SpectPatient> patients;
  for (int i = 0; i < 267; ++i) {
    SpectPatient p;
    p.label = i < 212 ? 1 : 0;
    int y = p.label;
    auto flip = [&](int v, double q) { return rng.next_bernoulli(q) ? 1 - v : v; };
    for (int j = 0; j < 22; ++j) p.f[j] = rng.next_bernoulli(base[j]) ? 1 : 0;
    p.f[6] = flip(y, 0.18);
    p.f[11] = flip(y, 0.24);
    p.f[16] = flip(y, 0.30);
    p.f[2] = flip(p.f[6], 0.25);
    p.f[9] = flip(p.f[11], 0.32);
    p.f[19] = flip(p.f[6], 0.38);
    patients.push_back(p);
  }

  // train split: 40 of each class, sampled without replacement
  std::vector<int> ones, zeros;
  for (int i = 0; i < 267; ++i) (patients[i].label ? ones : zeros).push_back(i);
  auto take = [&](std::vector<int>& pool, int k) {
    for (int i = 0; i < k; ++i) {
      std::uint32_t j = rng.next_below(static_cast<std::uint32_t>(pool.size() - i));
      std::swap(pool[i], pool[i + j]);
    }
    return std::vector<int>(pool.begin(), pool.begin() + k);
  };
  std::vector<int> train_idx = take(ones, 40);
  std::vector<int> zeros_taken = take(zeros, 40);
  train_idx.insert(train_idx.end(), zeros_taken.begin(), zeros_taken.end());
  std::sort(train_idx.begin(), train_idx.end());

  std::vector<bool> in_train(267, false);
  for (int i : train_idx) in_train[static_cast<std::size_t>(i)] = true;
  std::vector<SpectPatient> train_rows, test_rows;
  for (int i = 0; i < 267; ++i)
    (in_train[static_cast<std::size_t>(i)] ? train_rows : test_rows).push_back(patients[i]);

  train = spect_lines(train_rows);
  test = spect_lines(test_rows);
}

}  // namespace

int main(int argc, char** argv) {
  std::string out_dir = "data";
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--out-dir" && i + 1 < argc) out_dir = argv[++i];
    else {
      std::cerr << "usage: bocse-datagen [--out-dir DIR]\n";
      return 1;
    }
  }

  write_file(out_dir + "/diagnosis.data", make_acute());
  write_file(out_dir + "/tic-tac-toe.data", make_tictactoe());
  std::string train, test;
  make_spect(train, test);
  write_file(out_dir + "/SPECT.train", train);
  write_file(out_dir + "/SPECT.test", test);
  std::cout << "wrote diagnosis.data, tic-tac-toe.data, SPECT.train, SPECT.test to " << out_dir
            << "\n";
  return 0;
}

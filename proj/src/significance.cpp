#include "bocse/significance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bocse/parallel.hpp"
#include "bocse/rng.hpp"

namespace bocse {

void SignificanceConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  if (permutations < 1) throw std::invalid_argument("permutation count must be >= 1");
}

namespace {

using detail::DenseCells;

struct Scratch {
  std::vector<std::uint32_t> n_xyz;
  std::vector<std::uint8_t> xbuf;
  std::vector<std::uint32_t> rem;
};

double null_sample_shuffle(const DenseCells& cells, const std::vector<std::uint8_t>& x,
                           std::uint32_t ax, Pcg32& rng, Scratch& sc) {
  sc.xbuf = x;
  shuffle_span(std::span<std::uint8_t>(sc.xbuf), rng);
  detail::count_xyz(cells, sc.xbuf, ax, sc.n_xyz);
  return detail::cmi_from_counts(cells, sc.n_xyz, ax);
}

// Draws the (x symbol, yz cell) contingency counts directly from the
// multivariate hypergeometric law they follow under a uniform row
// permutation of X, then evaluates the same statistic.
double null_sample_counts(const DenseCells& cells, const std::vector<std::uint32_t>& x_count,
                          std::uint32_t ax, Pcg32& rng, Scratch& sc) {
  std::size_t nyz = static_cast<std::size_t>(cells.nz) * cells.ny;
  sc.n_xyz.assign(static_cast<std::size_t>(ax) * nyz, 0);
  sc.rem = x_count;
  std::uint32_t population = static_cast<std::uint32_t>(cells.rows);
  for (std::size_t cell = 0; cell < nyz; ++cell) {
    std::uint32_t m = cells.cell_count[cell];
    if (m == 0) continue;
    std::uint32_t pool = population;
    std::uint32_t left = m;
    for (std::uint32_t sym = 0; sym + 1 < ax && left > 0; ++sym) {
      std::uint32_t k = hypergeometric(pool, sc.rem[sym], left, rng);
      sc.n_xyz[static_cast<std::size_t>(sym) * nyz + cell] = k;
      sc.rem[sym] -= k;
      pool -= sc.rem[sym] + k;  // later symbols never see this one
      left -= k;
    }
    if (left > 0) {
      sc.n_xyz[static_cast<std::size_t>(ax - 1) * nyz + cell] = left;
      sc.rem[ax - 1] -= left;
    }
    population -= m;
  }
  return detail::cmi_from_counts(cells, sc.n_xyz, ax);
}

CmiTestResult run_test(const ColumnSet& x, const ColumnSet& y, const ColumnSet& z,
                       const SignificanceConfig& cfg, const TestContext& ctx, bool decision_only) {
  cfg.validate();
  if (x.size() != 1) throw std::invalid_argument("the shuffled candidate must be a single column");
  if (y.empty()) throw std::invalid_argument("target column set must be non-empty");
  if (x.dataset() != y.dataset() || (!z.empty() && z.dataset() != x.dataset()))
    throw std::invalid_argument("column sets reference different datasets");

  DenseCells cells = detail::make_dense_cells(y, z);
  auto xcol = x.column(0);
  std::vector<std::uint8_t> xvals(xcol.begin(), xcol.end());
  std::uint32_t ax = x.alphabet(0);
  std::vector<std::uint32_t> x_count(ax, 0);
  for (std::uint8_t v : xvals) ++x_count[v];

  CmiTestResult res;
  {
    Scratch sc;
    detail::count_xyz(cells, xvals, ax, sc.n_xyz);
    res.estimate = detail::cmi_from_counts(cells, sc.n_xyz, ax);
  }

  int n = cfg.permutations;
  // significant <=> #{null >= estimate} <= N - ceil((1-alpha)N)
  int order = static_cast<int>(std::ceil((1.0 - cfg.alpha) * n));
  int allowed_exceed = n - order;

  std::uint64_t test_seed =
      seed_mix(seed_mix(seed_mix(cfg.master_seed, ctx.target), ctx.stage), ctx.iteration);
  auto draw = [&](int replicate, Scratch& sc) {
    Pcg32 rng(seed_mix(test_seed, static_cast<std::uint64_t>(replicate)));
    return cfg.fast_null ? null_sample_counts(cells, x_count, ax, rng, sc)
                         : null_sample_shuffle(cells, xvals, ax, rng, sc);
  };

  if (decision_only) {
    Scratch sc;
    int exceed = 0;
    for (int r = 0; r < n; ++r) {
      if (draw(r, sc) >= res.estimate) {
        if (++exceed > allowed_exceed) {
          res.significant = false;
          res.p_value = 1.0;  // decision-only path; exact value not computed
          return res;
        }
      }
    }
    res.significant = true;
    res.p_value = static_cast<double>(1 + exceed) / static_cast<double>(1 + n);
    return res;
  }

  res.null_samples.assign(n, 0.0);
  unsigned chunks = std::min<unsigned>(thread_budget(), static_cast<unsigned>(n));
  parallel_for(chunks, [&](std::size_t c) {
    Scratch sc;
    int begin = static_cast<int>(static_cast<std::size_t>(n) * c / chunks);
    int end = static_cast<int>(static_cast<std::size_t>(n) * (c + 1) / chunks);
    for (int r = begin; r < end; ++r) res.null_samples[r] = draw(r, sc);
  });

  std::vector<double> sorted = res.null_samples;
  std::sort(sorted.begin(), sorted.end());
  res.threshold = sorted[order - 1];
  int exceed = 0;
  for (double v : res.null_samples)
    if (v >= res.estimate) ++exceed;
  res.p_value = static_cast<double>(1 + exceed) / static_cast<double>(1 + n);
  res.significant = res.estimate > res.threshold;
  return res;
}

}  // namespace

CmiTestResult permutation_test(const ColumnSet& x, const ColumnSet& y, const ColumnSet& z,
                               const SignificanceConfig& cfg, const TestContext& ctx) {
  return run_test(x, y, z, cfg, ctx, false);
}

namespace detail {
CmiTestResult permutation_test_decision(const ColumnSet& x, const ColumnSet& y, const ColumnSet& z,
                                        const SignificanceConfig& cfg, const TestContext& ctx) {
  return run_test(x, y, z, cfg, ctx, true);
}
}  // namespace detail

}  // namespace bocse

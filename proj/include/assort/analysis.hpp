#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "assort/plub.hpp"
#include "assort/types.hpp"

namespace assort {

/// Symmetric-difference variation of one ordered pair, normalized by
/// |a| + |b|. Conventions for the degenerate denominators: 0 when both sides
/// are empty, 1 when exactly one side is.
double av_pair(const Assortment& a, const Assortment& b);

/// Mean of av_pair over all ordered pairs of the given list; needs at least
/// two assortments. Always in [0, 1] and invariant under permutations.
double assortment_variation(const std::vector<Assortment>& assortments);

struct CompareMnlResult {
  Assortment s_opt;  // optimal under the full model
  Assortment s_mnl;  // optimal with u_bar forced to 0
  Money z_opt = 0.0;
  Money z_mnl = 0.0;  // value of s_mnl under the true u_bar
  double av = 0.0;
  double gap_percent = 0.0;  // 100 * (z_opt - z_mnl) / z_opt
};
CompareMnlResult compare_mnl(const Instance& inst);

/// Solves each category as if it were the whole market, then evaluates those
/// assortments under the true mixture.
struct CategoryComparisonResult {
  Assortment s_star;
  Money z_star = 0.0;
  std::vector<Assortment> per_category;
  std::vector<Money> per_category_value;  // under the mixture
  double mean_av = 0.0;
  double mean_gap_percent = 0.0;
};
CategoryComparisonResult compare_categories(const MultiCategoryInstance& mci,
                                            const PlubOptions& opts = {});

// --- bench harness ---------------------------------------------------------

struct BenchCell {
  int n = 0;
  std::optional<int> c_bar;
  std::optional<double> knapsack_mu;  // generated weights, capacity mu
  int u_bar = 1;
  std::optional<std::string> category;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> methods;  // plub, plub+pi, gplub, greedy, brute
  double time_limit_s = 60.0;
};

struct BenchSuite {
  std::vector<BenchCell> cells;
  int jobs = 1;
};
BenchSuite suite_from_json(const nlohmann::json& j);

/// Aggregated tables: one row per (cell, method); AV rows over groups of
/// cells that differ only in u_bar; cumulative performance-profile samples
/// (solve time for solved runs, log10 absolute gap for unsolved ones).
struct BenchReport {
  nlohmann::json rows = nlohmann::json::array();
  nlohmann::json av_rows = nlohmann::json::array();
  nlohmann::json profile = nlohmann::json::array();

  nlohmann::json to_json() const;
  std::string rows_csv() const;
  std::string av_csv() const;
  std::string profile_csv() const;
};

/// Runs every (cell, seed, method) task, optionally on a small thread pool.
/// Timing columns are omitted when include_timings is false, which makes the
/// report byte-deterministic across reruns.
BenchReport bench(const BenchSuite& suite, bool include_timings = true);

}  // namespace assort

#pragma once

#include <limits>
#include <optional>
#include <utility>

#include "assort/pwl.hpp"
#include "assort/types.hpp"
#include "assort/unconstrained.hpp"

namespace assort {

/// (theta_min, theta_max) for the secant construction: theta of the empty
/// assortment and 0.
std::pair<double, double> theta_bounds(const Instance& inst);

/// Exact per-product staying-probability caps. with_product[c][i] is the
/// maximum pi_c over feasible assortments containing product i+1;
/// without_product[c][i] the maximum over feasible assortments excluding it.
struct PiBounds {
  std::vector<std::vector<double>> with_product;
  std::vector<std::vector<double>> without_product;
};
PiBounds pi_bounds_per_product(const Instance& inst);
PiBounds pi_bounds_per_product(const MultiCategoryInstance& mci);

struct MasterOptions {
  std::vector<char> eliminated;          // 0-based mask; empty means none
  const PiBounds* pi_bounds = nullptr;   // optional caps
  double incumbent = 0.0;                // known feasible value, primes pruning
  bool disable_pruning = false;
  std::optional<double> time_limit_s;
};

struct MasterResult {
  Assortment assortment;
  double value = 0.0;
  long long nodes = 0;
  bool completed = true;  // false when the time limit interrupted the search
};

/// Maximizes sum_c w_c * min(h_c(theta_c(S)), caps) * R_c(S) over feasible
/// assortments by depth-first branch and bound. Node bound: the surrogate of
/// the include-all completion times the largest remaining revenue.
MasterResult solve_master(const MultiCategoryInstance& mci,
                          const std::vector<PiecewiseUpperBound>& h,
                          const MasterOptions& opts = {});

/// Single-category convenience wrapper.
std::pair<Assortment, double> solve_master(const Instance& inst, const PiecewiseUpperBound& h,
                                           const std::vector<int>& eliminated_ids = {},
                                           const PiBounds* pi_bounds = nullptr,
                                           Money incumbent = 0.0);

/// Products provably absent from every optimal constrained assortment,
/// given the unconstrained ladder and a valid lower bound on the optimum.
/// Requires u_bar == 1. Returns ascending product ids.
std::vector<int> eliminate_products_supervalid(const Instance& inst, const LambdaLadder& ladder,
                                               Money lower_bound);

struct PlubOptions {
  bool use_pi_bounds = false;
  bool use_supervalid = false;
  std::optional<Assortment> warm_start;
  double tol = 1e-9;  // absolute tolerance on pi' - exp(theta)
  double time_limit_s = std::numeric_limits<double>::infinity();
};

/// Cutting-plane solver for constrained instances, any u_bar. Alternates
/// master solves with exact evaluation of the returned assortment, refining
/// the secant bound until the incumbent is proven optimal.
SolveResult plub_solve(const Instance& inst, const PlubOptions& opts = {});

namespace detail {
SolveResult plub_core(const MultiCategoryInstance& mci, const PlubOptions& opts);
}

}  // namespace assort

#pragma once

#include "assort/types.hpp"

namespace assort {

/// Breakpoints of the auxiliary price lambda together with the nested
/// assortments that are optimal between consecutive breakpoints. There are
/// n+1 entries; each step removes exactly one product, ending at the empty
/// assortment.
struct LambdaLadder {
  std::vector<double> breakpoints;      // lambda_0 = 0 <= lambda_1 <= ...
  std::vector<Assortment> assortments;  // |assortments[k]| == n - k
};

/// Marginal price at which dropping product j from assortment s stops
/// hurting. Requires u_bar == 1.
double g_value(const Instance& inst, const Assortment& s, int j);

struct UnconstrainedResult {
  SolveResult result;
  LambdaLadder ladder;
};

/// Exact O(n^2) solver for the unconstrained problem with a single
/// top-priority position. Walks the lambda ladder and returns the
/// revenue-maximal assortment among its n+1 candidates.
UnconstrainedResult solve_unconstrained_u1(const Instance& inst);

}  // namespace assort

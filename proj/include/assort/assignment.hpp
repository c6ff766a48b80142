#pragma once

#include <vector>

namespace assort {

/// Matching between rows and columns of a rectangular weight matrix.
struct Matching {
  std::vector<int> col_of_row;  // -1 when unmatched
  std::vector<int> row_of_col;
  double total_weight = 0.0;    // sum of matched weights
};

/// Maximum-weight bipartite matching for nonnegative rectangular weights,
/// at most one partner per row and per column. The returned matching has
/// cardinality min(#rows, #cols); zero-weight pairs are used as fillers when
/// they do not change the total. Successive shortest augmenting paths,
/// O(min(R,C) * R * C).
Matching max_weight_assignment(const std::vector<std::vector<double>>& weight);

/// Optimal duals (alpha on rows, beta on cols) for the covering LP
///   min sum(alpha) + sum(beta)
///   s.t. alpha_r + beta_c >= weight[r][c],  alpha, beta >= 0,
/// built from a maximum-weight matching via complementary slackness:
/// tight on matched pairs, zero on unmatched rows and columns, and
/// sum(alpha) + sum(beta) == matching.total_weight.
struct AssignmentDuals {
  std::vector<double> alpha;
  std::vector<double> beta;
};
AssignmentDuals assignment_duals(const std::vector<std::vector<double>>& weight,
                                 const Matching& matching);

}  // namespace assort

#include "assort/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace assort {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shortest-augmenting-path assignment for a dense cost matrix with
// rows <= cols. Every row ends up matched; minimizes the total cost.
// cost(r, c) callable. Based on the classic Jonker-Volgenant scheme with
// node potentials kept only for the duration of the solve.
template <typename CostFn>
void solve_rows(int rows, int cols, CostFn cost, std::vector<int>& col_of_row,
                std::vector<int>& row_of_col) {
  col_of_row.assign(rows, -1);
  row_of_col.assign(cols, -1);
  std::vector<double> u(rows, 0.0), v(cols, 0.0);
  std::vector<double> dist(cols);
  std::vector<int> path(cols);
  std::vector<char> in_sc(cols);
  std::vector<int> sr;
  sr.reserve(rows);

  for (int cur = 0; cur < rows; ++cur) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(in_sc.begin(), in_sc.end(), 0);
    sr.clear();

    double min_val = 0.0;
    int i = cur;
    int sink = -1;
    while (sink == -1) {
      sr.push_back(i);
      double lowest = kInf;
      int j_low = -1;
      for (int j = 0; j < cols; ++j) {
        if (in_sc[j]) continue;
        const double red = min_val + cost(i, j) - u[i] - v[j];
        if (red < dist[j]) {
          dist[j] = red;
          path[j] = i;
        }
        if (dist[j] < lowest || (dist[j] == lowest && j_low != -1 &&
                                 row_of_col[j] == -1 && row_of_col[j_low] != -1)) {
          lowest = dist[j];
          j_low = j;
        }
      }
      if (j_low == -1) throw std::logic_error("assignment: no augmenting path");
      min_val = lowest;
      in_sc[j_low] = 1;
      if (row_of_col[j_low] == -1) {
        sink = j_low;
      } else {
        i = row_of_col[j_low];
      }
    }

    u[cur] += min_val;
    for (int r : sr) {
      if (r != cur) u[r] += min_val - dist[col_of_row[r]];
    }
    for (int j = 0; j < cols; ++j) {
      if (in_sc[j]) v[j] += dist[j] - min_val;
    }

    int j = sink;
    while (true) {
      const int r = path[j];
      row_of_col[j] = r;
      std::swap(col_of_row[r], j);
      if (r == cur) break;
    }
  }
}

}  // namespace

Matching max_weight_assignment(const std::vector<std::vector<double>>& weight) {
  Matching m;
  const int rows = static_cast<int>(weight.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(weight.front().size());
  m.col_of_row.assign(rows, -1);
  m.row_of_col.assign(cols, -1);
  if (rows == 0 || cols == 0) return m;

  if (rows <= cols) {
    solve_rows(
        rows, cols, [&](int r, int c) { return -weight[r][c]; }, m.col_of_row,
        m.row_of_col);
  } else {
    solve_rows(
        cols, rows, [&](int c, int r) { return -weight[r][c]; }, m.row_of_col,
        m.col_of_row);
  }
  for (int r = 0; r < rows; ++r) {
    if (m.col_of_row[r] >= 0) m.total_weight += weight[r][m.col_of_row[r]];
  }
  return m;
}

AssignmentDuals assignment_duals(const std::vector<std::vector<double>>& weight,
                                 const Matching& matching) {
  const int rows = static_cast<int>(weight.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(weight.front().size());
  AssignmentDuals d;
  d.alpha.assign(rows, 0.0);
  d.beta.assign(cols, 0.0);
  if (rows == 0 || cols == 0) return d;

  // beta is the least fixpoint of the covering constraints restricted by
  // complementary slackness; a longest-path relaxation reaches it because a
  // bounded optimal dual exists whenever the matching is optimal.
  for (int r = 0; r < rows; ++r) {
    if (matching.col_of_row[r] != -1) continue;
    for (int c = 0; c < cols; ++c) d.beta[c] = std::max(d.beta[c], weight[r][c]);
  }
  constexpr double kSlack = 1e-12;  // absorbs rounding on tied alternating cycles
  const int max_rounds = cols + 2;
  bool changed = true;
  int round = 0;
  while (changed) {
    if (++round > max_rounds) {
      throw std::logic_error("assignment duals did not converge; matching is not optimal");
    }
    changed = false;
    for (int r = 0; r < rows; ++r) {
      const int p = matching.col_of_row[r];
      if (p == -1) continue;
      const double base = d.beta[p] - weight[r][p];
      for (int c = 0; c < cols; ++c) {
        if (c == p) continue;
        const double need = base + weight[r][c];
        if (need > d.beta[c] + kSlack) {
          d.beta[c] = need;
          changed = true;
        }
      }
    }
  }
  for (int r = 0; r < rows; ++r) {
    const int p = matching.col_of_row[r];
    if (p == -1) continue;
    d.alpha[r] = std::max(0.0, weight[r][p] - d.beta[p]);
  }
  // Unmatched columns of an optimal matching carry no dual weight; wipe the
  // rounding dust so the zero certificates are exact.
  for (int c = 0; c < cols; ++c) {
    if (matching.row_of_col[c] == -1 && d.beta[c] < 1e-9) d.beta[c] = 0.0;
  }
  return d;
}

}  // namespace assort

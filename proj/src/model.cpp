#include "assort/model.hpp"

#include <algorithm>
#include <cmath>

#include "assort/assignment.hpp"

namespace assort {

namespace detail {

std::vector<int> complement_indices(int n, const Assortment& s) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n) - s.size());
  auto it = s.members.begin();
  for (int id = 1; id <= n; ++id) {
    if (it != s.members.end() && *it == id) {
      ++it;
    } else {
      out.push_back(id - 1);
    }
  }
  return out;
}

namespace {

std::vector<std::vector<double>> leave_weights(const std::vector<double>& leave_prob,
                                               const std::vector<std::vector<double>>& eta,
                                               int u_bar, const std::vector<int>& unavailable) {
  std::vector<std::vector<double>> w(static_cast<std::size_t>(u_bar));
  for (int k = 0; k < u_bar; ++k) {
    auto& row = w[static_cast<std::size_t>(k)];
    row.resize(unavailable.size());
    for (std::size_t j = 0; j < unavailable.size(); ++j) {
      const int i = unavailable[j];
      row[j] = -std::log1p(-eta[i][static_cast<std::size_t>(k)] * leave_prob[i]);
    }
  }
  return w;
}

}  // namespace

WorstCaseValue worst_case_raw(const std::vector<double>& leave_prob,
                              const std::vector<std::vector<double>>& eta, int u_bar,
                              const std::vector<int>& unavailable) {
  WorstCaseValue out;
  if (u_bar == 0 || unavailable.empty()) return out;
  const auto w = leave_weights(leave_prob, eta, u_bar, unavailable);
  const Matching match = max_weight_assignment(w);
  out.theta = -match.total_weight;
  double pi = 1.0;
  for (int k = 0; k < u_bar; ++k) {
    const int j = match.col_of_row[k];
    if (j == -1) continue;
    const int i = unavailable[static_cast<std::size_t>(j)];
    pi *= 1.0 - eta[i][static_cast<std::size_t>(k)] * leave_prob[i];
  }
  out.pi = pi;
  return out;
}

}  // namespace detail

Probability mnl_probability(const Instance& inst, const Assortment& s, int product) {
  inst.check_assortment(s);
  double denom = 1.0;  // nu_0
  for (int id : s.members) denom += inst.mnl_weight[static_cast<std::size_t>(id - 1)];
  if (product == 0) return 1.0 / denom;
  if (!s.contains(product)) {
    throw DomainError("product is neither offered nor the no-purchase option");
  }
  return inst.mnl_weight[static_cast<std::size_t>(product - 1)] / denom;
}

Money mnl_revenue(const Instance& inst, const Assortment& s) {
  double denom = 1.0;
  double num = 0.0;
  for (int id : s.members) {
    const auto i = static_cast<std::size_t>(id - 1);
    denom += inst.mnl_weight[i];
    num += inst.mnl_weight[i] * inst.revenue[i];
  }
  return num / denom;
}

WorstCaseValue worst_case_value(const Instance& inst, const Assortment& s) {
  inst.check_assortment(s);
  return detail::worst_case_raw(inst.leave_prob, inst.eta, inst.u_bar,
                                detail::complement_indices(inst.n, s));
}

namespace {

// Lexicographically smallest optimal placement: positions are filled in
// order, each with the smallest usable product id; a position stays empty
// only when no product can keep the completion optimal (which requires
// spare positions, i.e. u_bar > |unavailable|).
std::vector<int> lex_min_placement(const std::vector<std::vector<double>>& w,
                                   double best_total) {
  const int rows = static_cast<int>(w.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(w.front().size());
  std::vector<int> col_of_row(static_cast<std::size_t>(rows), -1);
  if (rows == 0 || cols == 0) return col_of_row;

  const int k_matches = std::min(rows, cols);
  int empty_budget = rows - k_matches;
  const double tol = 1e-10 * std::max(1.0, std::fabs(best_total));

  std::vector<char> used(static_cast<std::size_t>(cols), 0);
  double prefix = 0.0;
  auto completion = [&](int next_row, int skip_col) {
    std::vector<std::vector<double>> sub;
    sub.reserve(static_cast<std::size_t>(rows - next_row));
    for (int r = next_row; r < rows; ++r) {
      std::vector<double> line;
      line.reserve(static_cast<std::size_t>(cols));
      for (int c = 0; c < cols; ++c) {
        if (!used[static_cast<std::size_t>(c)] && c != skip_col) line.push_back(w[r][c]);
      }
      sub.push_back(std::move(line));
    }
    if (sub.empty() || sub.front().empty()) return 0.0;
    return max_weight_assignment(sub).total_weight;
  };

  for (int r = 0; r < rows; ++r) {
    int chosen = -1;
    for (int c = 0; c < cols; ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      if (prefix + w[r][c] + completion(r + 1, c) >= best_total - tol) {
        chosen = c;
        break;
      }
    }
    if (chosen == -1 && empty_budget > 0 &&
        prefix + completion(r + 1, -1) >= best_total - tol) {
      --empty_budget;
      continue;
    }
    if (chosen == -1) {
      // Every candidate failed the optimality test; fall back to the first
      // unused column so the construction still terminates.
      for (int c = 0; c < cols && chosen == -1; ++c) {
        if (!used[static_cast<std::size_t>(c)]) chosen = c;
      }
    }
    col_of_row[static_cast<std::size_t>(r)] = chosen;
    used[static_cast<std::size_t>(chosen)] = 1;
    prefix += w[r][chosen];
    if (static_cast<int>(std::count(used.begin(), used.end(), 1)) == k_matches) break;
  }
  return col_of_row;
}

}  // namespace

WorstCaseResult worst_case(const Instance& inst, const Assortment& s) {
  inst.check_assortment(s);
  WorstCaseResult out;
  out.alpha.assign(static_cast<std::size_t>(inst.u_bar), 0.0);
  const auto unavailable = detail::complement_indices(inst.n, s);
  if (inst.u_bar == 0 || unavailable.empty()) return out;

  const auto w = detail::leave_weights(inst.leave_prob, inst.eta, inst.u_bar, unavailable);
  const Matching best = max_weight_assignment(w);
  const auto placement = lex_min_placement(w, best.total_weight);

  Matching lex;
  lex.col_of_row = placement;
  lex.row_of_col.assign(unavailable.size(), -1);
  double theta = 0.0;
  double pi = 1.0;
  for (int k = 0; k < inst.u_bar; ++k) {
    const int j = placement[static_cast<std::size_t>(k)];
    if (j == -1) continue;
    lex.row_of_col[static_cast<std::size_t>(j)] = k;
    lex.total_weight += w[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    theta -= w[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    const int i = unavailable[static_cast<std::size_t>(j)];
    pi *= 1.0 - inst.eta[i][static_cast<std::size_t>(k)] * inst.leave_prob[i];
    out.worst_list.push_back(i + 1);
  }
  out.theta = theta;
  out.pi = pi;

  const AssignmentDuals duals = assignment_duals(w, lex);
  out.alpha = duals.alpha;
  for (std::size_t j = 0; j < unavailable.size(); ++j) {
    out.beta[unavailable[j] + 1] = duals.beta[j];
  }
  return out;
}

Money expected_revenue(const Instance& inst, const Assortment& s) {
  if (s.empty()) return 0.0;
  return worst_case_value(inst, s).pi * mnl_revenue(inst, s);
}

std::map<int, Probability> purchase_distribution_robust(const Instance& inst,
                                                        const Assortment& s) {
  std::map<int, Probability> dist;
  const double pi = worst_case_value(inst, s).pi;
  double denom = 1.0;
  for (int id : s.members) denom += inst.mnl_weight[static_cast<std::size_t>(id - 1)];
  double offered_mass = 0.0;
  for (int id : s.members) {
    const double p = pi * inst.mnl_weight[static_cast<std::size_t>(id - 1)] / denom;
    dist[id] = p;
    offered_mass += p;
  }
  dist[0] = 1.0 - offered_mass;
  return dist;
}

std::map<int, Probability> purchase_distribution_general(const Instance& inst,
                                                         const PreferenceScenario& scenario,
                                                         int partition_depth,
                                                         const Assortment& s) {
  scenario.validate(inst.n);
  inst.check_assortment(s);
  if (partition_depth < 0) throw ValidationError("partition depth must be nonnegative");
  if (partition_depth > inst.eta_cols()) {
    throw ValidationError("partition depth exceeds the eta columns of the instance");
  }

  std::map<int, Probability> dist;
  for (int id : s.members) dist[id] = 0.0;

  for (std::size_t t = 0; t < scenario.lists.size(); ++t) {
    const auto& list = scenario.lists[t];
    const double wt = scenario.weights[t];
    double survive = 1.0;  // probability of staying while walking the prefix
    bool alive = true;
    for (std::size_t pos = 0; pos < list.size() && alive; ++pos) {
      const int id = list[pos];
      const int k = static_cast<int>(pos) + 1;  // 1-based list position
      if (s.contains(id)) {
        // Most preferred available product: purchased if the customer is
        // still in the store. Top-priority attempts carry the survival
        // factors accumulated so far; low-priority products are reached
        // only after surviving the whole top-priority prefix.
        dist[id] += wt * survive;
        alive = false;
      } else if (k <= partition_depth) {
        const auto i = static_cast<std::size_t>(id - 1);
        survive *= 1.0 - inst.eta[i][static_cast<std::size_t>(k - 1)] * inst.leave_prob[i];
      }
      // unavailable low-priority products are skipped without risk
    }
  }

  double offered_mass = 0.0;
  for (int id : s.members) offered_mass += dist[id];
  dist[0] = 1.0 - offered_mass;
  return dist;
}

}  // namespace assort

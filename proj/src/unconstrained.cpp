#include "assort/unconstrained.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "assort/model.hpp"

namespace assort {

namespace {

void require_u1(const Instance& inst) {
  if (inst.u_bar != 1) {
    throw UnsupportedError("this operation requires exactly one top-priority position");
  }
}

// min over the complement of (1 - p_i^0); 1 when the complement is empty.
double pi_u1(const std::vector<double>& leave_prob, const std::vector<char>& in_s, int n) {
  double pi = 1.0;
  for (int i = 0; i < n; ++i) {
    if (!in_s[static_cast<std::size_t>(i)]) pi = std::min(pi, 1.0 - leave_prob[static_cast<std::size_t>(i)]);
  }
  return pi;
}

double g_raw(const Instance& inst, double sum_nu_r, double pi_s, int j /* 0-based */) {
  const auto ju = static_cast<std::size_t>(j);
  const double pi_without = std::min(pi_s, 1.0 - inst.leave_prob[ju]);
  return (inst.mnl_weight[ju] * inst.revenue[ju] * pi_without + sum_nu_r * (pi_s - pi_without)) /
         inst.mnl_weight[ju];
}

}  // namespace

double g_value(const Instance& inst, const Assortment& s, int j) {
  require_u1(inst);
  inst.check_assortment(s);
  if (!s.contains(j)) throw DomainError("g is defined only for offered products");
  std::vector<char> in_s(static_cast<std::size_t>(inst.n), 0);
  double sum_nu_r = 0.0;
  for (int id : s.members) {
    in_s[static_cast<std::size_t>(id - 1)] = 1;
    sum_nu_r += inst.mnl_weight[static_cast<std::size_t>(id - 1)] *
                inst.revenue[static_cast<std::size_t>(id - 1)];
  }
  return g_raw(inst, sum_nu_r, pi_u1(inst.leave_prob, in_s, inst.n), j - 1);
}

UnconstrainedResult solve_unconstrained_u1(const Instance& inst) {
  require_u1(inst);
  if (!std::holds_alternative<Unconstrained>(inst.constraint)) {
    throw UnsupportedError("the ladder solver handles only unconstrained instances");
  }
  const auto start = std::chrono::steady_clock::now();

  const int n = inst.n;
  std::vector<char> in_s(static_cast<std::size_t>(n), 1);
  std::vector<int> members(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) members[static_cast<std::size_t>(i)] = i + 1;
  double sum_nu_r = 0.0;
  for (int i = 0; i < n; ++i) {
    sum_nu_r += inst.mnl_weight[static_cast<std::size_t>(i)] * inst.revenue[static_cast<std::size_t>(i)];
  }

  UnconstrainedResult out;
  out.ladder.breakpoints.push_back(0.0);
  out.ladder.assortments.emplace_back(members);

  Assortment best = out.ladder.assortments.front();
  double best_z = expected_revenue(inst, best);

  double lambda_prev = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double pi_s = pi_u1(inst.leave_prob, in_s, n);
    double lambda_k = std::numeric_limits<double>::infinity();
    int drop = -1;
    for (int j = 0; j < n; ++j) {
      if (!in_s[static_cast<std::size_t>(j)]) continue;
      const double g = g_raw(inst, sum_nu_r, pi_s, j);
      if (g < lambda_k) {  // ties keep the smallest product id
        lambda_k = g;
        drop = j;
      }
    }
    if (lambda_k <= lambda_prev) lambda_k = lambda_prev;

    in_s[static_cast<std::size_t>(drop)] = 0;
    sum_nu_r -= inst.mnl_weight[static_cast<std::size_t>(drop)] *
                inst.revenue[static_cast<std::size_t>(drop)];
    std::vector<int> next;
    next.reserve(out.ladder.assortments.back().size() - 1);
    for (int id : out.ladder.assortments.back().members) {
      if (id != drop + 1) next.push_back(id);
    }
    out.ladder.breakpoints.push_back(lambda_k);
    out.ladder.assortments.emplace_back(std::move(next));
    lambda_prev = lambda_k;

    const double z = expected_revenue(inst, out.ladder.assortments.back());
    if (best_z <= z) {
      best_z = z;
      best = out.ladder.assortments.back();
    }
  }

  out.result.assortment = best;
  out.result.objective = best_z;
  out.result.upper_bound = best_z;
  out.result.gap = 0.0;
  out.result.iterations = n;
  out.result.nodes = 0;
  out.result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace assort

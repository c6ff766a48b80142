#include "assort/greedy.hpp"

#include <chrono>

#include "assort/multicat.hpp"

namespace assort {

namespace detail {

SolveResult greedy_core(const MultiCategoryInstance& mci) {
  if (std::holds_alternative<Unconstrained>(mci.constraint)) {
    throw UnsupportedError("the greedy solver expects a cardinality or knapsack constraint");
  }
  const auto start = std::chrono::steady_clock::now();

  long long evals = 0;
  auto value_of = [&](const Assortment& s) {
    ++evals;
    return expected_revenue_multicat(mci, s);
  };

  double z_lower = 0.0;  // shared across seed products
  std::vector<Assortment> grown;
  grown.reserve(static_cast<std::size_t>(mci.n));

  for (int seed = 1; seed <= mci.n; ++seed) {
    Assortment s(std::vector<int>{seed});
    z_lower = value_of(s);  // the seed resets the shared incumbent
    int pick = seed;
    while (pick != 0) {
      pick = 0;
      for (int k = 1; k <= mci.n; ++k) {
        if (s.contains(k)) continue;
        const Assortment candidate = s.with(k);
        if (!constraint_feasible(mci.constraint, candidate)) continue;
        const double z = value_of(candidate);
        if (z > z_lower) {
          z_lower = z;
          pick = k;
        }
      }
      if (pick != 0) s = s.with(pick);
    }
    grown.push_back(std::move(s));
  }

  SolveResult res;
  double best = -1.0;
  for (const auto& s : grown) {
    const double z = value_of(s);
    if (z > best) {
      best = z;
      res.assortment = s;
    }
  }
  res.objective = best;
  res.iterations = mci.n;
  res.nodes = evals;
  res.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace detail

SolveResult greedy_solve(const Instance& inst) {
  return detail::greedy_core(MultiCategoryInstance::from_single(inst));
}

}  // namespace assort

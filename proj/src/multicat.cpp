#include "assort/multicat.hpp"

#include "assort/greedy.hpp"
#include "assort/model.hpp"

namespace assort {

WorstCaseValue worst_case_value_category(const MultiCategoryInstance& mci, std::size_t c,
                                         const Assortment& s) {
  const auto& cat = mci.categories.at(c);
  return detail::worst_case_raw(cat.leave_prob, cat.eta, cat.u_bar,
                                detail::complement_indices(mci.n, s));
}

Money expected_revenue_multicat(const MultiCategoryInstance& mci, const Assortment& s) {
  if (s.empty()) return 0.0;
  const auto complement = detail::complement_indices(mci.n, s);
  double total = 0.0;
  for (const auto& cat : mci.categories) {
    const auto wc = detail::worst_case_raw(cat.leave_prob, cat.eta, cat.u_bar, complement);
    // accumulated exactly like the single-instance path so that one category
    // with weight 1 reproduces expected_revenue bit for bit
    double denom = 1.0, num = 0.0;
    for (int id : s.members) {
      const auto i = static_cast<std::size_t>(id - 1);
      denom += cat.mnl_weight[i];
      num += cat.mnl_weight[i] * mci.revenue[i];
    }
    total += cat.weight * (wc.pi * (num / denom));
  }
  return total;
}

SolveResult plub_solve_multicat(const MultiCategoryInstance& mci, const PlubOptions& opts) {
  return detail::plub_core(mci, opts);
}

SolveResult greedy_solve_multicat(const MultiCategoryInstance& mci) {
  return detail::greedy_core(mci);
}

}  // namespace assort

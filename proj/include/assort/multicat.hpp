#pragma once

#include "assort/model.hpp"
#include "assort/plub.hpp"
#include "assort/types.hpp"

namespace assort {

/// Weighted per-category staying probability and value.
WorstCaseValue worst_case_value_category(const MultiCategoryInstance& mci, std::size_t c,
                                         const Assortment& s);

/// sum_c w_c * pi_c(S) * sum_{i in S} rho_ic(S) r_i.
Money expected_revenue_multicat(const MultiCategoryInstance& mci, const Assortment& s);

/// Cutting-plane solver with one secant bound per category; refines every
/// category whose bound still overestimates at the master solution.
SolveResult plub_solve_multicat(const MultiCategoryInstance& mci, const PlubOptions& opts = {});

/// Greedy construction under the weighted multi-category objective.
SolveResult greedy_solve_multicat(const MultiCategoryInstance& mci);

}  // namespace assort

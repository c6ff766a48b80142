#pragma once

#include "assort/types.hpp"

namespace assort {

/// Seeded greedy construction: for every seed product, grow the assortment by
/// the exactly-evaluated best addition while it improves the shared incumbent,
/// then return the best of the n candidate assortments. The objective is
/// always an exact expected revenue. `nodes` reports the number of revenue
/// evaluations.
SolveResult greedy_solve(const Instance& inst);

namespace detail {
SolveResult greedy_core(const MultiCategoryInstance& mci);
}

}  // namespace assort

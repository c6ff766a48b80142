#pragma once

#include <map>

#include "assort/types.hpp"

namespace assort {

/// Pure-MNL choice probability of `product` (or 0 for no-purchase) under
/// assortment `s`. Throws DomainError if the product is neither offered
/// nor the no-purchase option.
Probability mnl_probability(const Instance& inst, const Assortment& s, int product);

/// Sum over offered products of rho_i(S) * r_i.
Money mnl_revenue(const Instance& inst, const Assortment& s);

/// Staying probability under the adversarial top-priority list, value only.
struct WorstCaseValue {
  Probability pi = 1.0;
  double theta = 0.0;
};
WorstCaseValue worst_case_value(const Instance& inst, const Assortment& s);

/// Full evaluation: value, the lexicographically smallest minimizing list
/// (position-major, then product id) and the optimal dual certificates.
WorstCaseResult worst_case(const Instance& inst, const Assortment& s);

/// pi(S) * sum_{i in S} rho_i(S) r_i; zero for the empty assortment.
Money expected_revenue(const Instance& inst, const Assortment& s);

/// Purchase distribution under the worst-case list. Offered products get
/// pi(S)*rho_i(S); key 0 carries the complementary no-purchase mass.
std::map<int, Probability> purchase_distribution_robust(const Instance& inst,
                                                        const Assortment& s);

/// Purchase distribution of the general sequential model for an explicit
/// list distribution. `partition_depth` is the number of top-priority
/// positions. Key 0 carries the no-purchase mass (complement of the
/// offered-product mass).
std::map<int, Probability> purchase_distribution_general(const Instance& inst,
                                                         const PreferenceScenario& scenario,
                                                         int partition_depth,
                                                         const Assortment& s);

namespace detail {
/// Worst-case machinery on raw per-category parameters; `unavailable` holds
/// the 0-based indices of products not offered. Shared by the single- and
/// multi-category paths.
WorstCaseValue worst_case_raw(const std::vector<double>& leave_prob,
                              const std::vector<std::vector<double>>& eta, int u_bar,
                              const std::vector<int>& unavailable);
std::vector<int> complement_indices(int n, const Assortment& s);
}  // namespace detail

}  // namespace assort

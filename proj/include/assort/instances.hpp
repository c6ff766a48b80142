#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "json.hpp"

#include "assort/types.hpp"

namespace assort {

/// o_i sampling ranges for the sensitivity categories: 1 = high, 2 = medium,
/// 3 = low sensitivity to unavailability; mixed tags pick a base range per
/// product uniformly among their members.
enum class CategoryTag { One, Two, Three, OneTwo, OneThree, TwoThree, OneTwoThree };
CategoryTag parse_category_tag(const std::string& s);
std::string to_string(CategoryTag tag);

/// Knapsack constraint whose per-product weights are drawn from U[0.75,1.25]
/// as part of instance generation.
struct KnapsackSpec {
  double mu = 0.0;
};
using GenConstraint = std::variant<Unconstrained, Cardinality, Knapsack, KnapsackSpec>;

/// Seeded random instance. Stream: std::mt19937_64(seed); uniforms are
/// (x >> 11) * 2^-53. Per product, in order: a, b, d, o; then (knapsack spec
/// only) one gamma draw per product. r = 10*o^2*a, nu = 10*(1-o)*b,
/// p0 = 0.4*(1-o)*d, eta_{ik} = 2 / (1 + exp(-(k-1)*(1-o))).
Instance generate_instance(std::uint64_t seed, int n, const GenConstraint& constraint, int u_bar);

/// Same stream, but o is drawn from the tag's range(s); the range selector
/// (mixed tags only) is drawn between d and o.
Instance generate_category_instance(std::uint64_t seed, int n, int c_bar, CategoryTag tag,
                                    int u_bar = 5);

/// Shared revenues with per-category choice parameters. One stream: per
/// product (a, o_r) with r = 10*o_r^2*a and o_r ~ U[0,1]; then one block per
/// category of per-product (b, d, [range selector], o) draws.
MultiCategoryInstance generate_multicat_instance(std::uint64_t seed, int n, int c_bar,
                                                 const std::vector<CategoryTag>& tags,
                                                 const std::vector<double>& weights,
                                                 int u_bar = 5);

/// Exhaustive enumeration of feasible assortments; ties broken by the
/// lexicographically smallest member list. Guarded against n > max_n.
SolveResult brute_force_solve(const Instance& inst, int max_n = 20);
SolveResult brute_force_solve(const MultiCategoryInstance& mci, int max_n = 20);

// --- serialization ---------------------------------------------------------

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const MultiCategoryInstance& mci);
MultiCategoryInstance mci_from_json(const nlohmann::json& j);

/// Either a single- or a multi-category instance, depending on whether the
/// file carries a "categories" array.
struct LoadedInstance {
  std::optional<Instance> single;
  std::optional<MultiCategoryInstance> multi;
  std::string digest;

  bool is_multi() const { return multi.has_value(); }
};
LoadedInstance load_instance_file(const std::string& path);
void save_instance_file(const std::string& path, const Instance& inst);
void save_instance_file(const std::string& path, const MultiCategoryInstance& mci);

/// FNV-1a 64 over the canonical JSON dump; not cryptographic, used to tie
/// solution files to the instance they were produced from.
std::string instance_digest(const nlohmann::json& j);

PreferenceScenario scenario_from_json(const nlohmann::json& j);

nlohmann::json solve_result_to_json(const SolveResult& res, const std::string& method,
                                    const std::string& instance_ref);

}  // namespace assort

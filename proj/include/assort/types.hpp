#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace assort {

using Money = double;
using Probability = double;

// Error taxonomy; the CLI maps these onto stable exit codes.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Unconstrained {};
struct Cardinality {
  int c_bar = 1;
};
struct Knapsack {
  std::vector<double> gamma;  // space per product, gamma_i < mu
  double mu = 0.0;            // total available space
};
using Constraint = std::variant<Unconstrained, Cardinality, Knapsack>;

/// Offered set. Product ids are 1..n; the no-purchase option 0 is never a
/// member. Members are kept sorted ascending without duplicates.
struct Assortment {
  std::vector<int> members;

  Assortment() = default;
  explicit Assortment(std::vector<int> ids);

  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }
  bool contains(int id) const;
  Assortment with(int id) const;
  Assortment without(int id) const;

  bool operator==(const Assortment&) const = default;
  bool operator<(const Assortment& o) const { return members < o.members; }
};

/// One product universe with a single customer population.
///
/// Vectors are 0-indexed internally: product id i corresponds to index i-1.
/// eta[i-1][k-1] is the multiplier on leave_prob[i-1] after the k-th
/// unavailable attempt; eta[i-1][0] must equal 1.
struct Instance {
  int n = 0;
  std::vector<double> revenue;              // r_i >= 0
  std::vector<double> mnl_weight;           // nu_i > 0; nu_0 is fixed to 1
  std::vector<double> leave_prob;           // p_i^0 in [0,1]
  std::vector<std::vector<double>> eta;     // n rows, >= u_bar columns
  int u_bar = 0;                            // top-priority positions
  Constraint constraint = Unconstrained{};

  int eta_cols() const;
  void validate() const;                       // throws ValidationError
  void check_assortment(const Assortment&) const;  // throws DomainError
  bool is_feasible(const Assortment&) const;
};

/// Staying probability under the adversarial preference list, with the LP
/// certificates that prove it.
struct WorstCaseResult {
  Probability pi = 1.0;  // product form over the chosen list
  double theta = 0.0;    // sum of log terms; pi == exp(theta) up to rounding
  std::vector<int> worst_list;     // unavailable ids, by list position
  std::vector<double> alpha;       // one dual per position, size u_bar
  std::map<int, double> beta;      // dual per unavailable product id
};

/// Explicit distribution over preference lists for the general (non-robust)
/// sequential model.
struct PreferenceScenario {
  std::vector<std::vector<int>> lists;
  std::vector<double> weights;

  void validate(int n) const;  // throws DomainError / ValidationError
};

/// Common result shape for every solver (exact, heuristic, brute force).
struct SolveResult {
  Assortment assortment;
  Money objective = 0.0;
  std::optional<Money> upper_bound;  // absent for heuristics
  std::optional<double> gap;         // (ub - obj) / max(obj, eps)
  long long iterations = 0;
  long long nodes = 0;
  double wall_time_s = 0.0;
  bool time_limit_hit = false;
  std::vector<std::pair<double, double>> trace;  // (bound, incumbent) per iteration
};

struct CategoryModel {
  double weight = 1.0;  // proportion of customers in this category
  std::vector<double> mnl_weight;
  std::vector<double> leave_prob;
  std::vector<std::vector<double>> eta;
  int u_bar = 0;
};

/// Shared products and constraint, per-category choice parameters.
/// Revenues are shared across categories.
struct MultiCategoryInstance {
  int n = 0;
  std::vector<double> revenue;
  Constraint constraint = Unconstrained{};
  std::vector<CategoryModel> categories;

  void validate() const;
  Instance category_instance(std::size_t c) const;
  static MultiCategoryInstance from_single(const Instance&);
};

void validate_constraint(const Constraint& c, int n);
bool constraint_feasible(const Constraint& c, const Assortment& s);
double knapsack_weight(const Knapsack& k, const Assortment& s);

}  // namespace assort

#include "assort/types.hpp"

#include <algorithm>
#include <cmath>

namespace assort {

namespace {
constexpr double kEtaOneTol = 1e-12;
constexpr double kLeaveProbCap = 1.0 - 1e-12;  // keeps ln(1 - eta*p) finite
}  // namespace

Assortment::Assortment(std::vector<int> ids) : members(std::move(ids)) {
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
    throw DomainError("assortment contains duplicate product ids");
  }
}

bool Assortment::contains(int id) const {
  return std::binary_search(members.begin(), members.end(), id);
}

Assortment Assortment::with(int id) const {
  if (contains(id)) return *this;
  Assortment out = *this;
  out.members.insert(std::lower_bound(out.members.begin(), out.members.end(), id), id);
  return out;
}

Assortment Assortment::without(int id) const {
  Assortment out = *this;
  auto it = std::lower_bound(out.members.begin(), out.members.end(), id);
  if (it != out.members.end() && *it == id) out.members.erase(it);
  return out;
}

int Instance::eta_cols() const {
  if (eta.empty()) return 0;
  return static_cast<int>(eta.front().size());
}

void validate_constraint(const Constraint& c, int n) {
  if (const auto* card = std::get_if<Cardinality>(&c)) {
    if (card->c_bar < 1) throw ValidationError("cardinality bound must be positive");
  } else if (const auto* ks = std::get_if<Knapsack>(&c)) {
    if (static_cast<int>(ks->gamma.size()) != n) {
      throw ValidationError("knapsack weights must have one entry per product");
    }
    if (!(ks->mu > 0.0)) throw ValidationError("knapsack capacity must be positive");
    for (double g : ks->gamma) {
      if (!(g > 0.0)) throw ValidationError("knapsack weights must be positive");
      if (!(g < ks->mu)) throw ValidationError("every knapsack weight must be below the capacity");
    }
  }
}

bool constraint_feasible(const Constraint& c, const Assortment& s) {
  if (std::holds_alternative<Unconstrained>(c)) return true;
  if (const auto* card = std::get_if<Cardinality>(&c)) {
    return static_cast<int>(s.size()) <= card->c_bar;
  }
  const auto& ks = std::get<Knapsack>(c);
  return knapsack_weight(ks, s) <= ks.mu;
}

double knapsack_weight(const Knapsack& k, const Assortment& s) {
  double w = 0.0;
  for (int id : s.members) w += k.gamma[static_cast<std::size_t>(id - 1)];
  return w;
}

void Instance::validate() const {
  if (n < 1) throw ValidationError("instance needs at least one product");
  auto expect_size = [&](const auto& v, const char* name) {
    if (static_cast<int>(v.size()) != n) {
      throw ValidationError(std::string(name) + " must have exactly n entries");
    }
  };
  expect_size(revenue, "revenue");
  expect_size(mnl_weight, "mnl_weight");
  expect_size(leave_prob, "leave_prob");
  expect_size(eta, "eta");

  for (int i = 0; i < n; ++i) {
    if (!(revenue[i] >= 0.0) || !std::isfinite(revenue[i])) {
      throw ValidationError("revenues must be nonnegative and finite");
    }
    if (!(mnl_weight[i] > 0.0) || !std::isfinite(mnl_weight[i])) {
      throw ValidationError("mnl weights must be positive and finite");
    }
    if (!(leave_prob[i] >= 0.0 && leave_prob[i] <= 1.0)) {
      throw ValidationError("leaving probabilities must lie in [0,1]");
    }
  }

  const std::size_t cols = eta.empty() ? 0 : eta.front().size();
  for (const auto& row : eta) {
    if (row.size() != cols) throw ValidationError("eta rows must all have the same length");
  }
  if (u_bar < 0) throw ValidationError("u_bar must be nonnegative");
  if (u_bar > static_cast<int>(cols)) {
    throw ValidationError("u_bar exceeds the number of eta columns");
  }
  for (int i = 0; i < n; ++i) {
    if (cols >= 1 && std::fabs(eta[i][0] - 1.0) > kEtaOneTol) {
      throw ValidationError("eta must equal 1 in its first column");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      if (!(eta[i][k] >= 0.0) || !std::isfinite(eta[i][k])) {
        throw ValidationError("eta entries must be nonnegative and finite");
      }
      if (static_cast<int>(k) < u_bar && eta[i][k] * leave_prob[i] > kLeaveProbCap) {
        throw ValidationError("eta*leave_prob must stay strictly below 1");
      }
    }
  }
  validate_constraint(constraint, n);
}

void Instance::check_assortment(const Assortment& s) const {
  for (int id : s.members) {
    if (id < 1 || id > n) throw DomainError("product id out of range");
  }
}

bool Instance::is_feasible(const Assortment& s) const {
  return constraint_feasible(constraint, s);
}

void PreferenceScenario::validate(int n) const {
  if (lists.size() != weights.size()) {
    throw ValidationError("scenario needs one weight per preference list");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ValidationError("scenario weights must be nonnegative");
    total += w;
  }
  if (std::fabs(total - 1.0) > 1e-12) {
    throw ValidationError("scenario weights must sum to 1");
  }
  for (const auto& list : lists) {
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (int id : list) {
      if (id < 1 || id > n) throw DomainError("preference list contains an out-of-range id");
      if (seen[static_cast<std::size_t>(id)]) {
        throw DomainError("preference list contains a repeated id");
      }
      seen[static_cast<std::size_t>(id)] = 1;
    }
  }
}

void MultiCategoryInstance::validate() const {
  if (categories.empty()) throw ValidationError("at least one customer category is required");
  double total = 0.0;
  for (const auto& cat : categories) {
    if (!(cat.weight >= 0.0 && cat.weight <= 1.0)) {
      throw ValidationError("category weights must lie in [0,1]");
    }
    total += cat.weight;
  }
  if (std::fabs(total - 1.0) > 1e-12) {
    throw ValidationError("category weights must sum to 1");
  }
  for (std::size_t c = 0; c < categories.size(); ++c) {
    category_instance(c).validate();
  }
}

Instance MultiCategoryInstance::category_instance(std::size_t c) const {
  const auto& cat = categories.at(c);
  Instance inst;
  inst.n = n;
  inst.revenue = revenue;
  inst.mnl_weight = cat.mnl_weight;
  inst.leave_prob = cat.leave_prob;
  inst.eta = cat.eta;
  inst.u_bar = cat.u_bar;
  inst.constraint = constraint;
  return inst;
}

MultiCategoryInstance MultiCategoryInstance::from_single(const Instance& inst) {
  MultiCategoryInstance mci;
  mci.n = inst.n;
  mci.revenue = inst.revenue;
  mci.constraint = inst.constraint;
  CategoryModel cat;
  cat.weight = 1.0;
  cat.mnl_weight = inst.mnl_weight;
  cat.leave_prob = inst.leave_prob;
  cat.eta = inst.eta;
  cat.u_bar = inst.u_bar;
  mci.categories.push_back(std::move(cat));
  return mci;
}

}  // namespace assort

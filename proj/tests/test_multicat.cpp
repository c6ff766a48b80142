#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "assort/greedy.hpp"
#include "assort/instances.hpp"
#include "assort/model.hpp"
#include "assort/multicat.hpp"
#include "oracles.hpp"

using namespace assort;

namespace {

MultiCategoryInstance random_mci(std::mt19937_64& rng, int n, std::size_t cats, int u_bar,
                                 Constraint c) {
  MultiCategoryInstance mci;
  const auto base = oracle::random_instance(rng, n, u_bar, c);
  mci.n = n;
  mci.revenue = base.revenue;
  mci.constraint = std::move(c);
  std::vector<double> weights;
  double left = 1.0;
  for (std::size_t k = 0; k + 1 < cats; ++k) {
    const double w = left / 2.0;
    weights.push_back(w);
    left -= w;
  }
  weights.push_back(left);
  for (std::size_t k = 0; k < cats; ++k) {
    const auto params = oracle::random_instance(rng, n, u_bar, Unconstrained{});
    CategoryModel cat;
    cat.weight = weights[k];
    cat.mnl_weight = params.mnl_weight;
    cat.leave_prob = params.leave_prob;
    cat.eta = params.eta;
    cat.u_bar = u_bar;
    mci.categories.push_back(std::move(cat));
  }
  mci.validate();
  return mci;
}

}  // namespace

TEST_CASE("single category degenerates exactly") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 7);
    const int u = static_cast<int>(rng() % 3);
    const auto inst =
        oracle::random_instance(rng, n, u, Cardinality{2 + static_cast<int>(rng() % 3)});
    const auto mci = MultiCategoryInstance::from_single(inst);

    const auto s = oracle::random_subset(rng, n);
    CHECK(expected_revenue_multicat(mci, s) == expected_revenue(inst, s));

    const auto single = plub_solve(inst);
    const auto multi = plub_solve_multicat(mci);
    CHECK(single.objective == multi.objective);
    CHECK(single.assortment == multi.assortment);

    CHECK(greedy_solve(inst).objective == greedy_solve_multicat(mci).objective);
  }
}

TEST_CASE("two identical categories behave like one") {
  std::mt19937_64 rng(72);
  const int n = 7;
  const auto inst = oracle::random_instance(rng, n, 2, Cardinality{3});
  MultiCategoryInstance mci = MultiCategoryInstance::from_single(inst);
  mci.categories.push_back(mci.categories.front());
  mci.categories[0].weight = 0.5;
  mci.categories[1].weight = 0.5;
  mci.validate();

  for (int trial = 0; trial < 40; ++trial) {
    const auto s = oracle::random_subset(rng, n);
    CHECK(expected_revenue_multicat(mci, s) == expected_revenue(inst, s));
  }
  CHECK(plub_solve_multicat(mci).objective == plub_solve(inst).objective);
}

TEST_CASE("objective is the weighted average of per-category evaluations") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 6);
    const auto mci = random_mci(rng, n, 3, 2, Cardinality{3});
    const auto s = oracle::random_subset(rng, n);

    double expect = 0.0;
    for (std::size_t c = 0; c < mci.categories.size(); ++c) {
      const Instance view = mci.category_instance(c);
      expect += mci.categories[c].weight * expected_revenue(view, s);
    }
    CHECK(expected_revenue_multicat(mci, s) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("solver equals exhaustive enumeration with two categories") {
  std::mt19937_64 rng(74);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 5);  // 5..9
    const int u = 1 + static_cast<int>(rng() % 2);
    const auto mci = random_mci(rng, n, 2, u, Cardinality{2 + static_cast<int>(rng() % 3)});
    const auto brute = brute_force_solve(mci);
    const auto res = plub_solve_multicat(mci);
    CHECK(std::fabs(res.objective - brute.objective) <= 1e-8);
    CHECK(*res.gap <= 1e-9);

    PlubOptions with_pi;
    with_pi.use_pi_bounds = true;
    CHECK(std::fabs(plub_solve_multicat(mci, with_pi).objective - brute.objective) <= 1e-8);
  }
}

TEST_CASE("greedy never beats the exact multi-category solver") {
  std::mt19937_64 rng(75);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 5);
    const auto mci = random_mci(rng, n, 2, 2, Cardinality{3});
    const auto exact = plub_solve_multicat(mci);
    const auto greedy = greedy_solve_multicat(mci);
    CHECK(greedy.objective <= exact.objective + 1e-9);
    CHECK(constraint_feasible(mci.constraint, greedy.assortment));
  }
}

TEST_CASE("bound trace is sound for the multi-category loop") {
  std::mt19937_64 rng(76);
  const auto mci = random_mci(rng, 8, 3, 2, Cardinality{4});
  const auto res = plub_solve_multicat(mci);
  for (std::size_t t = 1; t < res.trace.size(); ++t) {
    CHECK(res.trace[t].first <= res.trace[t - 1].first);
  }
  for (const auto& [bound, incumbent] : res.trace) {
    CHECK(bound >= res.objective - 1e-9);
    CHECK(incumbent <= res.objective + 1e-15);
  }
}

TEST_CASE("category weights must sum to one") {
  std::mt19937_64 rng(77);
  auto mci = random_mci(rng, 5, 2, 1, Cardinality{2});
  mci.categories[0].weight = 0.7;
  mci.categories[1].weight = 0.7;
  CHECK_THROWS_AS(mci.validate(), ValidationError);
}

TEST_CASE("generated mixture instances are valid and deterministic") {
  const std::vector<CategoryTag> tags = {CategoryTag::One, CategoryTag::Three};
  const std::vector<double> weights = {0.4, 0.6};
  const auto a = generate_multicat_instance(5, 12, 4, tags, weights, 3);
  const auto b = generate_multicat_instance(5, 12, 4, tags, weights, 3);
  CHECK(a.revenue == b.revenue);
  REQUIRE(a.categories.size() == 2);
  CHECK(a.categories[0].mnl_weight == b.categories[0].mnl_weight);
  CHECK(a.categories[1].leave_prob == b.categories[1].leave_prob);
  // high-sensitivity category has systematically larger leaving probabilities
  double mean0 = 0.0, mean1 = 0.0;
  for (int i = 0; i < 12; ++i) {
    mean0 += a.categories[0].leave_prob[static_cast<std::size_t>(i)];
    mean1 += a.categories[1].leave_prob[static_cast<std::size_t>(i)];
  }
  CHECK(mean0 / 12.0 > mean1 / 12.0);
}

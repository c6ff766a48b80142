#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "assort/model.hpp"
#include "oracles.hpp"

using namespace assort;

namespace {

Instance make_instance(std::vector<double> revenue, std::vector<double> nu,
                       std::vector<double> p0, int u_bar) {
  Instance inst;
  inst.n = static_cast<int>(revenue.size());
  inst.revenue = std::move(revenue);
  inst.mnl_weight = std::move(nu);
  inst.leave_prob = std::move(p0);
  inst.u_bar = u_bar;
  inst.eta.assign(static_cast<std::size_t>(inst.n),
                  std::vector<double>(static_cast<std::size_t>(u_bar), 1.0));
  inst.validate();
  return inst;
}

void check_certificates(const Instance& inst, const Assortment& s) {
  const auto wc = worst_case(inst, s);
  CHECK(std::fabs(wc.pi - std::exp(wc.theta)) <= 1e-12);

  double dual_value = 0.0;
  for (double a : wc.alpha) {
    CHECK(a >= 0.0);
    dual_value -= a;
  }
  for (const auto& [id, b] : wc.beta) {
    CHECK(b >= 0.0);
    CHECK_FALSE(s.contains(id));
    dual_value -= b;
  }
  CHECK(std::fabs(dual_value - wc.theta) <= 1e-9);

  for (int id = 1; id <= inst.n; ++id) {
    if (s.contains(id)) continue;
    const auto i = static_cast<std::size_t>(id - 1);
    for (int k = 0; k < inst.u_bar; ++k) {
      const double rhs = -std::log1p(-inst.eta[i][static_cast<std::size_t>(k)] *
                                     inst.leave_prob[i]);
      CHECK(wc.alpha[static_cast<std::size_t>(k)] + wc.beta.at(id) >= rhs - 1e-9);
    }
  }

  // worst list: distinct unavailable ids, min(u_bar, |complement|) of them
  const std::size_t complement =
      static_cast<std::size_t>(inst.n) - s.size();
  CHECK(wc.worst_list.size() ==
        std::min<std::size_t>(static_cast<std::size_t>(inst.u_bar), complement));
  std::vector<char> seen(static_cast<std::size_t>(inst.n) + 1, 0);
  for (int id : wc.worst_list) {
    CHECK_FALSE(s.contains(id));
    CHECK(!seen[static_cast<std::size_t>(id)]);
    seen[static_cast<std::size_t>(id)] = 1;
  }
}

}  // namespace

TEST_CASE("mnl probabilities") {
  const auto inst = make_instance({5.0, 3.0}, {1.0, 3.0}, {0.1, 0.1}, 0);

  SUBCASE("empty assortment forces no purchase") {
    CHECK(mnl_probability(inst, Assortment{}, 0) == 1.0);
  }
  SUBCASE("direct substitution") {
    CHECK(mnl_probability(inst, Assortment{{1, 2}}, 2) == doctest::Approx(0.6).epsilon(1e-15));
  }
  SUBCASE("unoffered product is a domain error") {
    CHECK_THROWS_AS(mnl_probability(inst, Assortment{{1}}, 2), DomainError);
  }
  SUBCASE("symmetric weights split evenly and normalize") {
    const auto sym = make_instance({1.0, 1.0, 1.0}, {2.0, 2.0, 2.0}, {0.0, 0.0, 0.0}, 0);
    const Assortment all{{1, 2, 3}};
    const double p1 = mnl_probability(sym, all, 1);
    CHECK(p1 == mnl_probability(sym, all, 2));
    CHECK(p1 == mnl_probability(sym, all, 3));
    CHECK(mnl_probability(sym, all, 0) == doctest::Approx(1.0 / 7.0).epsilon(1e-15));
    CHECK(3.0 * p1 + mnl_probability(sym, all, 0) == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("worst case conventions") {
  SUBCASE("u_bar zero means nobody leaves") {
    const auto inst = make_instance({1.0, 1.0}, {1.0, 1.0}, {0.3, 0.2}, 0);
    const auto wc = worst_case(inst, Assortment{{1}});
    CHECK(wc.pi == 1.0);
    CHECK(wc.theta == 0.0);
    CHECK(wc.worst_list.empty());
  }
  SUBCASE("full assortment keeps everyone") {
    const auto inst = make_instance({1.0, 1.0}, {1.0, 1.0}, {0.3, 0.2}, 1);
    const auto wc = worst_case(inst, Assortment{{1, 2}});
    CHECK(wc.pi == 1.0);
    CHECK(wc.theta == 0.0);
    CHECK(wc.worst_list.empty());
  }
  SUBCASE("single position picks the stickiest absentee") {
    const auto inst = make_instance({1.0, 1.0}, {1.0, 1.0}, {0.3, 0.2}, 1);
    const auto wc = worst_case(inst, Assortment{{1}});
    CHECK(wc.worst_list == std::vector<int>{2});
    CHECK(wc.pi == doctest::Approx(0.8).epsilon(1e-15));
  }
}

TEST_CASE("two-position worst case equals enumeration over orderings") {
  Instance inst;
  inst.n = 4;
  inst.revenue = {1.0, 1.0, 1.0, 1.0};
  inst.mnl_weight = {1.0, 1.0, 1.0, 1.0};
  inst.leave_prob = {0.35, 0.25, 0.1, 0.1};
  inst.u_bar = 2;
  inst.eta = {{1.0, 1.4}, {1.0, 1.9}, {1.0, 1.2}, {1.0, 1.1}};
  inst.validate();

  const Assortment s{{3, 4}};
  const auto wc = worst_case(inst, s);
  const double a = (1.0 - inst.leave_prob[0]) * (1.0 - inst.eta[1][1] * inst.leave_prob[1]);
  const double b = (1.0 - inst.leave_prob[1]) * (1.0 - inst.eta[0][1] * inst.leave_prob[0]);
  CHECK(wc.pi == std::min(a, b));

  const auto enumd = oracle::enumerate_worst_case(inst.leave_prob, inst.eta, inst.u_bar, {0, 1});
  CHECK(wc.pi == enumd.pi);
}

TEST_CASE("worst case equals exhaustive enumeration on random instances") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 250; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);   // up to 8
    const int u = 1 + static_cast<int>(rng() % 3);   // up to 3
    const auto inst = oracle::random_instance(rng, n, u, Unconstrained{});
    const auto s = oracle::random_subset(rng, n);
    std::vector<int> unavailable;
    for (int id = 1; id <= n; ++id) {
      if (!s.contains(id)) unavailable.push_back(id - 1);
    }
    const auto expect =
        oracle::enumerate_worst_case(inst.leave_prob, inst.eta, inst.u_bar, unavailable);
    CHECK(worst_case_value(inst, s).pi == expect.pi);
    check_certificates(inst, s);
  }
}

TEST_CASE("more positions than absentees") {
  // one unavailable product, rising eta: the adversary uses the last position
  Instance inst;
  inst.n = 2;
  inst.revenue = {1.0, 1.0};
  inst.mnl_weight = {1.0, 1.0};
  inst.leave_prob = {0.0, 0.3};
  inst.u_bar = 3;
  inst.eta = {{1.0, 1.0, 1.0}, {1.0, 1.5, 2.0}};
  inst.validate();
  const auto wc = worst_case(inst, Assortment{{1}});
  CHECK(wc.pi == doctest::Approx(1.0 - 2.0 * 0.3).epsilon(1e-15));
  CHECK(wc.worst_list == std::vector<int>{2});
  check_certificates(inst, Assortment{{1}});
}

TEST_CASE("worst list tie break is deterministic and position-major") {
  const auto inst = make_instance({1, 1, 1}, {1, 1, 1}, {0.2, 0.2, 0.2}, 2);
  // all products tie; lexicographically smallest optimal list is (1, 2)
  const auto wc = worst_case(inst, Assortment{});
  CHECK(wc.worst_list == std::vector<int>{1, 2});
}

TEST_CASE("monotonicity of the staying probability under nesting") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 8);
    const int u = static_cast<int>(rng() % 4);
    const auto inst = oracle::random_instance(rng, n, u, Unconstrained{});
    const auto big = oracle::random_subset(rng, n, 0.7);
    std::vector<int> small_ids;
    for (int id : big.members) {
      if (rng() % 2 == 0) small_ids.push_back(id);
    }
    const Assortment small{small_ids};
    CHECK(worst_case_value(inst, small).pi <= worst_case_value(inst, big).pi + 1e-12);
  }
}

TEST_CASE("expected revenue") {
  SUBCASE("empty assortment earns nothing") {
    const auto inst = make_instance({4.0}, {2.0}, {0.1}, 1);
    CHECK(expected_revenue(inst, Assortment{}) == 0.0);
  }
  SUBCASE("u_bar zero reduces to closed-form MNL revenue") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 2 + static_cast<int>(rng() % 6);
      const auto inst = oracle::random_instance(rng, n, 0, Unconstrained{});
      const auto s = oracle::random_subset(rng, n);
      double denom = 1.0, num = 0.0;
      for (int id : s.members) {
        denom += inst.mnl_weight[static_cast<std::size_t>(id - 1)];
        num += inst.mnl_weight[static_cast<std::size_t>(id - 1)] *
               inst.revenue[static_cast<std::size_t>(id - 1)];
      }
      CHECK(std::fabs(expected_revenue(inst, s) - num / denom) <= 1e-12);
    }
  }
  SUBCASE("matches the independently scripted evaluation") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
      const auto inst = oracle::random_instance(rng, 6, 2, Unconstrained{});
      const auto s = oracle::random_subset(rng, 6);
      CHECK(expected_revenue(inst, s) ==
            doctest::Approx(oracle::direct_revenue(inst, s)).epsilon(1e-12));
    }
  }
}

TEST_CASE("robust purchase distribution") {
  SUBCASE("full assortment reduces to plain MNL") {
    const auto inst = make_instance({1.0, 2.0}, {1.5, 0.5}, {0.4, 0.3}, 1);
    const Assortment all{{1, 2}};
    const auto dist = purchase_distribution_robust(inst, all);
    CHECK(dist.at(1) == mnl_probability(inst, all, 1));
    CHECK(dist.at(2) == mnl_probability(inst, all, 2));
    CHECK(dist.at(0) == doctest::Approx(mnl_probability(inst, all, 0)).epsilon(1e-15));
  }
  SUBCASE("u_bar one closed form") {
    const auto inst = make_instance({1.0, 1.0, 1.0}, {2.0, 1.0, 1.0}, {0.1, 0.35, 0.2}, 1);
    const auto dist = purchase_distribution_robust(inst, Assortment{{1}});
    const double expect = (1.0 - 0.35) * 2.0 / 3.0;
    CHECK(dist.at(1) == doctest::Approx(expect).epsilon(1e-15));
  }
  SUBCASE("normalization and range on random instances") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 8);
      const int u = static_cast<int>(rng() % 4);
      const auto inst = oracle::random_instance(rng, n, u, Unconstrained{});
      const auto s = oracle::random_subset(rng, n);
      const auto dist = purchase_distribution_robust(inst, s);
      double total = 0.0;
      for (const auto& [id, p] : dist) {
        (void)id;
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        total += p;
      }
      CHECK(std::fabs(total - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("general model on the two-product scenario") {
  const auto inst = make_instance({1.0, 1.0}, {1.0, 1.0}, {0.3, 0.2}, 1);
  PreferenceScenario sc;
  sc.lists = {{1}, {2}, {1, 2}, {2, 1}};
  sc.weights = {0.1, 0.2, 0.3, 0.4};
  const auto dist = purchase_distribution_general(inst, sc, 1, Assortment{{1}});
  CHECK(std::fabs(dist.at(1) - 0.72) <= 1e-12);
  CHECK(std::fabs(dist.at(0) - 0.28) <= 1e-12);
}

TEST_CASE("general model with everything offered buys list heads") {
  const auto inst = make_instance({1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}, {0.3, 0.2, 0.1}, 1);
  PreferenceScenario sc;
  sc.lists = {{2, 1}, {3}, {1, 3, 2}};
  sc.weights = {0.5, 0.25, 0.25};
  const auto dist = purchase_distribution_general(inst, sc, 1, Assortment{{1, 2, 3}});
  CHECK(dist.at(2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(dist.at(3) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(dist.at(1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(dist.at(0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("general model matches the Monte Carlo walk") {
  std::mt19937_64 rng(2024);
  Instance inst = oracle::random_instance(rng, 5, 2, Unconstrained{});
  PreferenceScenario sc;
  sc.lists = {{1, 2, 3}, {4, 5}, {3, 1}, {5, 2, 1, 4}, {2}};
  sc.weights = {0.3, 0.2, 0.2, 0.2, 0.1};
  const Assortment s{{2, 4}};
  const auto dist = purchase_distribution_general(inst, sc, 2, s);

  const std::size_t samples = 1000000;
  const auto freq = oracle::simulate_general(inst, sc, 2, s, samples, 99);
  for (int id = 0; id <= inst.n; ++id) {
    const double p = dist.count(id) ? dist.at(id) : 0.0;
    const double se = std::sqrt(std::max(p * (1.0 - p), 1e-12) / samples);
    CHECK(std::fabs(freq[static_cast<std::size_t>(id)] - p) <= 3.0 * se + 1e-9);
  }
}

TEST_CASE("general model rejects malformed lists") {
  const auto inst = make_instance({1.0, 1.0}, {1.0, 1.0}, {0.3, 0.2}, 1);
  PreferenceScenario sc;
  sc.lists = {{1, 7}};
  sc.weights = {1.0};
  CHECK_THROWS_AS(purchase_distribution_general(inst, sc, 1, Assortment{{1}}), DomainError);
}

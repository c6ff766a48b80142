#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "assort/analysis.hpp"
#include "assort/instances.hpp"
#include "assort/model.hpp"
#include "oracles.hpp"

using namespace assort;

TEST_CASE("assortment variation basics") {
  const Assortment a{{1, 2}};
  const Assortment b{{1, 3}};
  const Assortment c{{4, 5}};

  SUBCASE("identical assortments have zero variation") {
    CHECK(assortment_variation({a, a, a}) == 0.0);
  }
  SUBCASE("disjoint pairs have full variation") {
    CHECK(assortment_variation({a, c}) == 1.0);
  }
  SUBCASE("half-overlapping pair") {
    CHECK(assortment_variation({a, b}) == doctest::Approx(0.5).epsilon(1e-15));
  }
  SUBCASE("fewer than two assortments is an error") {
    CHECK_THROWS_AS(assortment_variation({a}), DomainError);
  }
  SUBCASE("empty-set conventions") {
    CHECK(av_pair(Assortment{}, Assortment{}) == 0.0);
    CHECK(av_pair(Assortment{}, a) == 1.0);
    CHECK(av_pair(a, Assortment{}) == 1.0);
  }
}

TEST_CASE("assortment variation is permutation invariant and bounded") {
  std::mt19937_64 rng(91);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Assortment> list;
    const std::size_t t = 2 + rng() % 4;
    for (std::size_t k = 0; k < t; ++k) list.push_back(oracle::random_subset(rng, 8));
    const double av = assortment_variation(list);
    CHECK(av >= 0.0);
    CHECK(av <= 1.0);
    auto shuffled = list;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(assortment_variation(shuffled) == doctest::Approx(av).epsilon(1e-15));
  }
}

TEST_CASE("comparison against the plain-MNL optimum") {
  SUBCASE("an MNL instance compares to itself") {
    const auto inst = generate_instance(5, 8, Cardinality{3}, 0);
    const auto r = compare_mnl(inst);
    CHECK(r.gap_percent == 0.0);
    CHECK(r.av == 0.0);
    CHECK(r.s_opt == r.s_mnl);
  }
  SUBCASE("gap is nonnegative and matches brute-force optima") {
    for (std::uint64_t seed = 30; seed < 40; ++seed) {
      const auto inst = generate_instance(seed, 9, Cardinality{3}, 2);
      const auto r = compare_mnl(inst);
      CHECK(r.gap_percent >= -1e-9);

      const auto z_star = brute_force_solve(inst).objective;
      Instance mnl = inst;
      mnl.u_bar = 0;
      const auto s_mnl = brute_force_solve(mnl).assortment;
      const double z_mnl = expected_revenue(inst, s_mnl);
      const double expect = z_star > 0.0 ? 100.0 * (z_star - z_mnl) / z_star : 0.0;
      CHECK(r.gap_percent == doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("category comparison reports a mixture penalty") {
  const auto mci = generate_multicat_instance(21, 10, 4, {CategoryTag::One, CategoryTag::Three},
                                              {0.5, 0.5}, 4);
  const auto r = compare_categories(mci);
  CHECK(r.per_category.size() == 2);
  CHECK(r.mean_gap_percent >= -1e-9);
  CHECK(r.z_star >= *std::max_element(r.per_category_value.begin(), r.per_category_value.end()) - 1e-9);
}

TEST_CASE("bench runs cells and aggregates") {
  BenchSuite suite;
  for (int u : {1, 2}) {
    BenchCell cell;
    cell.n = 6;
    cell.c_bar = 3;
    cell.u_bar = u;
    cell.seeds = {1, 2};
    cell.methods = {"plub", "greedy"};
    cell.time_limit_s = 30.0;
    suite.cells.push_back(cell);
  }
  const auto report = bench(suite, /*include_timings=*/false);
  CHECK(report.rows.size() == 4);  // 2 cells x 2 methods
  for (const auto& row : report.rows) {
    CHECK(row.at("instances").get<int>() == 2);
    if (row.at("method").get<std::string>() == "plub") {
      CHECK(row.at("solved").get<int>() == 2);
    }
    if (row.at("method").get<std::string>() == "greedy" &&
        !row.at("mean_gap_vs_exact_pct").is_null()) {
      CHECK(row.at("mean_gap_vs_exact_pct").get<double>() >= -1e-9);
    }
  }
  // the two cells differ only in u_bar, so they form one AV group
  REQUIRE(report.av_rows.size() == 1);
  const double av = report.av_rows[0].at("mean_av").get<double>();
  CHECK(av >= 0.0);
  CHECK(av <= 1.0);
}

TEST_CASE("bench without timings is byte-deterministic") {
  BenchSuite suite;
  BenchCell cell;
  cell.n = 6;
  cell.c_bar = 2;
  cell.u_bar = 1;
  cell.seeds = {7, 8, 9};
  cell.methods = {"plub", "greedy", "brute"};
  suite.cells.push_back(cell);

  const auto a = bench(suite, false);
  const auto b = bench(suite, false);
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(a.rows_csv() == b.rows_csv());
  CHECK(a.profile_csv() == b.profile_csv());

  // parallel execution must assemble the identical report
  suite.jobs = 3;
  const auto c = bench(suite, false);
  CHECK(c.to_json().dump() == a.to_json().dump());
}

TEST_CASE("empty suite produces an empty report") {
  const auto report = bench(BenchSuite{}, false);
  CHECK(report.rows.empty());
  CHECK(report.av_rows.empty());
  CHECK(report.profile.empty());
  CHECK(report.rows_csv().find('\n') != std::string::npos);  // header only
}

TEST_CASE("suite parsing validates its fields") {
  nlohmann::json j;
  j["cells"] = nlohmann::json::array();
  nlohmann::json cell;
  cell["n"] = 5;
  cell["u_bar"] = 1;
  cell["seeds"] = {1};
  cell["methods"] = {"plub"};
  j["cells"].push_back(cell);
  CHECK_THROWS_AS(suite_from_json(j), ValidationError);  // no constraint given
  j["cells"][0]["c_bar"] = 2;
  CHECK(suite_from_json(j).cells.size() == 1);
}

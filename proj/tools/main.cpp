// Command-line front end: generate instances, solve them, evaluate
// assortments, compare against the plain-MNL optimum and run benchmark
// suites. JSON on stdout by default; --csv switches table output.
//
// Exit codes: 0 success, 2 validation/usage-domain error, 3 infeasible,
// 4 finished at the time limit with a nonzero gap, 64 unknown flags.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "assort/analysis.hpp"
#include "assort/greedy.hpp"
#include "assort/instances.hpp"
#include "assort/model.hpp"
#include "assort/multicat.hpp"
#include "assort/plub.hpp"
#include "assort/unconstrained.hpp"

namespace {

using nlohmann::json;

void emit(const json& j, const std::optional<std::string>& out_path) {
  std::cout << j.dump(2) << std::endl;
  if (out_path) {
    std::ofstream out(*out_path);
    if (!out) throw assort::ValidationError("cannot write file: " + *out_path);
    out << j.dump(2) << '\n';
  }
}

assort::Assortment parse_assortment_arg(const std::string& arg, const std::string& digest) {
  namespace fs = std::filesystem;
  if (fs::exists(arg)) {
    std::ifstream in(arg);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw assort::ValidationError("malformed assortment file: " + std::string(e.what()));
    }
    if (j.is_array()) return assort::Assortment{j.get<std::vector<int>>()};
    if (j.contains("instance_ref") && j.at("instance_ref").get<std::string>() != digest) {
      throw assort::ValidationError("solution file was produced from a different instance");
    }
    return assort::Assortment{j.at("assortment").get<std::vector<int>>()};
  }
  std::vector<int> ids;
  std::string token;
  for (char c : arg) {
    if (c == ',') {
      if (!token.empty()) ids.push_back(std::stoi(token));
      token.clear();
    } else {
      token.push_back(c);
    }
  }
  if (!token.empty()) ids.push_back(std::stoi(token));
  return assort::Assortment{ids};
}

json distribution_to_json(const std::map<int, double>& dist) {
  json j = json::object();
  for (const auto& [id, p] : dist) j[std::to_string(id)] = p;
  return j;
}

int run_gen(std::uint64_t seed, int n, int u_bar, std::optional<int> cbar,
            std::optional<double> knapsack_mu, bool unconstrained,
            const std::optional<std::string>& category, const std::string& out_path) {
  assort::GenConstraint gc = assort::Unconstrained{};
  int modes = (cbar ? 1 : 0) + (knapsack_mu ? 1 : 0) + (unconstrained ? 1 : 0);
  if (modes > 1) {
    throw assort::ValidationError("choose one of --cbar, --knapsack-mu, --unconstrained");
  }
  if (cbar) gc = assort::Cardinality{*cbar};
  if (knapsack_mu) gc = assort::KnapsackSpec{*knapsack_mu};

  assort::Instance inst;
  if (category) {
    if (!cbar) throw assort::ValidationError("--category requires --cbar");
    inst = assort::generate_category_instance(seed, n, *cbar,
                                              assort::parse_category_tag(*category), u_bar);
  } else {
    inst = assort::generate_instance(seed, n, gc, u_bar);
  }
  assort::save_instance_file(out_path, inst);
  json j;
  j["file"] = out_path;
  j["digest"] = assort::instance_digest(assort::instance_to_json(inst));
  j["n"] = n;
  j["u_bar"] = u_bar;
  std::cout << j.dump(2) << std::endl;
  return 0;
}

int run_solve(const std::string& instance_path, const std::string& method, bool pi_bounds,
              bool supervalid, const std::optional<std::string>& warm_start, double tol,
              double time_limit, const std::optional<std::string>& out_path) {
  const auto loaded = assort::load_instance_file(instance_path);

  assort::PlubOptions opts;
  opts.use_pi_bounds = pi_bounds;
  opts.use_supervalid = supervalid;
  opts.tol = tol;
  opts.time_limit_s = time_limit;

  assort::SolveResult res;
  if (loaded.is_multi()) {
    const auto& mci = *loaded.multi;
    if (method == "plub") {
      if (warm_start) {
        if (*warm_start != "greedy") throw assort::ValidationError("unknown warm start: " + *warm_start);
        opts.warm_start = assort::greedy_solve_multicat(mci).assortment;
      }
      res = assort::plub_solve_multicat(mci, opts);
    } else if (method == "greedy") {
      res = assort::greedy_solve_multicat(mci);
    } else if (method == "brute") {
      res = assort::brute_force_solve(mci);
    } else {
      throw assort::UnsupportedError("method " + method + " does not support multi-category files");
    }
  } else {
    const auto& inst = *loaded.single;
    if (method == "plub") {
      if (warm_start) {
        if (*warm_start != "greedy") throw assort::ValidationError("unknown warm start: " + *warm_start);
        opts.warm_start = assort::greedy_solve(inst).assortment;
      }
      res = assort::plub_solve(inst, opts);
    } else if (method == "greedy") {
      res = assort::greedy_solve(inst);
    } else if (method == "uncon-u1") {
      res = assort::solve_unconstrained_u1(inst).result;
    } else if (method == "brute") {
      res = assort::brute_force_solve(inst);
    } else {
      throw assort::ValidationError("unknown method: " + method);
    }
  }

  emit(assort::solve_result_to_json(res, method, loaded.digest), out_path);
  return res.time_limit_hit ? 4 : 0;
}

int run_eval(const std::string& instance_path, const std::string& assortment_arg,
             const std::optional<std::string>& scenario_path) {
  const auto loaded = assort::load_instance_file(instance_path);
  const auto s = parse_assortment_arg(assortment_arg, loaded.digest);

  json j;
  j["instance_ref"] = loaded.digest;
  j["assortment"] = s.members;

  if (scenario_path) {
    if (loaded.is_multi()) {
      throw assort::UnsupportedError("scenario evaluation expects a single-category instance");
    }
    std::ifstream in(*scenario_path);
    if (!in) throw assort::ValidationError("cannot open scenario file: " + *scenario_path);
    json sj;
    try {
      in >> sj;
    } catch (const json::exception& e) {
      throw assort::ValidationError("malformed scenario JSON: " + std::string(e.what()));
    }
    const auto scenario = assort::scenario_from_json(sj);
    const auto dist = assort::purchase_distribution_general(*loaded.single, scenario,
                                                            loaded.single->u_bar, s);
    j["probabilities"] = distribution_to_json(dist);
    std::cout << j.dump(2) << std::endl;
    return 0;
  }

  if (loaded.is_multi()) {
    const auto& mci = *loaded.multi;
    mci.category_instance(0).check_assortment(s);
    j["objective"] = assort::expected_revenue_multicat(mci, s);
    json cats = json::array();
    for (std::size_t c = 0; c < mci.categories.size(); ++c) {
      const auto wc = assort::worst_case_value_category(mci, c, s);
      json cj;
      cj["pi"] = wc.pi;
      cj["theta"] = wc.theta;
      cats.push_back(std::move(cj));
    }
    j["categories"] = std::move(cats);
  } else {
    const auto& inst = *loaded.single;
    const auto wc = assort::worst_case(inst, s);
    j["objective"] = assort::expected_revenue(inst, s);
    j["pi"] = wc.pi;
    j["theta"] = wc.theta;
    j["worst_list"] = wc.worst_list;
    j["probabilities"] = distribution_to_json(assort::purchase_distribution_robust(inst, s));
  }
  std::cout << j.dump(2) << std::endl;
  return 0;
}

int run_compare_mnl(const std::string& instance_path) {
  const auto loaded = assort::load_instance_file(instance_path);
  if (loaded.is_multi()) {
    throw assort::UnsupportedError("compare-mnl expects a single-category instance");
  }
  const auto r = assort::compare_mnl(*loaded.single);
  json j;
  j["instance_ref"] = loaded.digest;
  j["s_opt"] = r.s_opt.members;
  j["s_mnl"] = r.s_mnl.members;
  j["z_opt"] = r.z_opt;
  j["z_mnl"] = r.z_mnl;
  j["av"] = r.av;
  j["gap_percent"] = r.gap_percent;
  std::cout << j.dump(2) << std::endl;
  return 0;
}

int run_bench(const std::string& suite_path, const std::optional<std::string>& out_path,
              std::optional<int> jobs, bool no_timing, bool as_json) {
  std::ifstream in(suite_path);
  if (!in) throw assort::ValidationError("cannot open suite file: " + suite_path);
  json sj;
  try {
    in >> sj;
  } catch (const json::exception& e) {
    throw assort::ValidationError("malformed suite JSON: " + std::string(e.what()));
  }
  auto suite = assort::suite_from_json(sj);
  if (jobs) suite.jobs = *jobs;
  const auto report = assort::bench(suite, !no_timing);

  if (as_json) {
    emit(report.to_json(), out_path);
    return 0;
  }
  if (!out_path) {
    std::cout << report.rows_csv();
    return 0;
  }
  namespace fs = std::filesystem;
  const fs::path base(*out_path);
  auto sibling = [&](const std::string& tag) {
    fs::path p = base;
    p.replace_filename(base.stem().string() + tag + base.extension().string());
    return p.string();
  };
  std::ofstream(base) << report.rows_csv();
  std::ofstream(sibling("_av")) << report.av_csv();
  std::ofstream(sibling("_profile")) << report.profile_csv();
  json j;
  j["report"] = base.string();
  j["av"] = sibling("_av");
  j["profile"] = sibling("_profile");
  std::cout << j.dump(2) << std::endl;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"robust assortment optimization under a ranking-based choice model"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a seeded random instance");
  std::uint64_t seed = 0;
  int n = 10, u_bar = 1;
  std::optional<int> cbar;
  std::optional<double> knapsack_mu;
  bool unconstrained = false;
  std::optional<std::string> category;
  std::string gen_out;
  gen->add_option("--seed", seed, "PRNG seed")->required();
  gen->add_option("--n", n, "number of products")->required();
  gen->add_option("--ubar", u_bar, "top-priority positions")->required();
  gen->add_option("--cbar", cbar, "cardinality bound");
  gen->add_option("--knapsack-mu", knapsack_mu, "knapsack capacity (weights drawn)");
  gen->add_flag("--unconstrained", unconstrained, "no feasibility constraint");
  gen->add_option("--category", category, "sensitivity category tag (1|2|3|1,2|1,3|2,3|1,2,3)");
  gen->add_option("-o,--out", gen_out, "output instance file")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "solve an instance file");
  std::string solve_instance, method = "plub";
  bool pi_bounds = false, supervalid = false;
  std::optional<std::string> warm_start;
  double tol = 1e-9, time_limit = std::numeric_limits<double>::infinity();
  std::optional<std::string> solve_out;
  solve->add_option("instance", solve_instance, "instance file")->required();
  solve->add_option("--method", method, "plub | greedy | uncon-u1 | brute")->required();
  solve->add_flag("--pi-bounds", pi_bounds, "use per-product staying-probability caps");
  solve->add_flag("--supervalid", supervalid, "eliminate products via the unconstrained ladder");
  solve->add_option("--warm-start", warm_start, "greedy");
  solve->add_option("--tol", tol, "termination tolerance");
  solve->add_option("--time-limit", time_limit, "seconds");
  solve->add_option("-o,--out", solve_out, "write the solution file here");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate an assortment on an instance");
  std::string eval_instance, eval_assortment;
  std::optional<std::string> scenario;
  eval->add_option("instance", eval_instance, "instance file")->required();
  eval->add_option("assortment", eval_assortment, "comma list (1,3) or solution file")->required();
  eval->add_option("--scenario", scenario, "preference-list scenario file (general model)");

  // compare-mnl
  auto* cmp = app.add_subcommand("compare-mnl", "optimal assortment vs the u_bar = 0 optimum");
  std::string cmp_instance;
  cmp->add_option("instance", cmp_instance, "instance file")->required();

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark suite");
  std::string suite_path;
  std::optional<std::string> bench_out;
  std::optional<int> jobs;
  bool no_timing = false, bench_json = false;
  bench_cmd->add_option("--suite", suite_path, "suite file")->required();
  bench_cmd->add_option("-o,--out", bench_out, "report file (CSV; _av/_profile siblings)");
  bench_cmd->add_option("--jobs", jobs, "worker threads");
  bench_cmd->add_flag("--no-timing", no_timing, "omit timing columns (byte-deterministic)");
  bench_cmd->add_flag("--json", bench_json, "single JSON report instead of CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 64;
  }

  try {
    if (gen->parsed()) {
      return run_gen(seed, n, u_bar, cbar, knapsack_mu, unconstrained, category, gen_out);
    }
    if (solve->parsed()) {
      return run_solve(solve_instance, method, pi_bounds, supervalid, warm_start, tol, time_limit,
                       solve_out);
    }
    if (eval->parsed()) return run_eval(eval_instance, eval_assortment, scenario);
    if (cmp->parsed()) return run_compare_mnl(cmp_instance);
    if (bench_cmd->parsed()) return run_bench(suite_path, bench_out, jobs, no_timing, bench_json);
  } catch (const assort::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << std::endl;
    return 3;
  } catch (const assort::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << std::endl;
    return 2;
  } catch (const assort::UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << std::endl;
    return 2;
  } catch (const assort::DomainError& e) {
    std::cerr << "domain error: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}

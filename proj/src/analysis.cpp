#include "assort/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

#include "assort/greedy.hpp"
#include "assort/instances.hpp"
#include "assort/model.hpp"
#include "assort/multicat.hpp"

namespace assort {

double av_pair(const Assortment& a, const Assortment& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return 1.0;
  std::size_t common = 0;
  for (int id : a.members) {
    if (b.contains(id)) ++common;
  }
  const auto sym_diff = static_cast<double>(a.size() - common + b.size() - common);
  return sym_diff / static_cast<double>(a.size() + b.size());
}

double assortment_variation(const std::vector<Assortment>& assortments) {
  const std::size_t t = assortments.size();
  if (t < 2) throw DomainError("assortment variation needs at least two assortments");
  double total = 0.0;
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < t; ++j) {
      if (i != j) total += av_pair(assortments[i], assortments[j]);
    }
  }
  return total / (static_cast<double>(t) * static_cast<double>(t - 1));
}

CompareMnlResult compare_mnl(const Instance& inst) {
  CompareMnlResult out;
  const SolveResult full = plub_solve(inst);
  Instance mnl = inst;
  mnl.u_bar = 0;
  const SolveResult base = plub_solve(mnl);
  out.s_opt = full.assortment;
  out.s_mnl = base.assortment;
  out.z_opt = full.objective;
  out.z_mnl = expected_revenue(inst, base.assortment);
  out.av = av_pair(out.s_opt, out.s_mnl);
  out.gap_percent = out.z_opt > 0.0 ? 100.0 * (out.z_opt - out.z_mnl) / out.z_opt : 0.0;
  return out;
}

CategoryComparisonResult compare_categories(const MultiCategoryInstance& mci,
                                            const PlubOptions& opts) {
  CategoryComparisonResult out;
  const SolveResult mixed = plub_solve_multicat(mci, opts);
  out.s_star = mixed.assortment;
  out.z_star = mixed.objective;
  double av_sum = 0.0, gap_sum = 0.0;
  for (std::size_t c = 0; c < mci.categories.size(); ++c) {
    const SolveResult single = plub_solve(mci.category_instance(c), opts);
    const double z_c = expected_revenue_multicat(mci, single.assortment);
    out.per_category.push_back(single.assortment);
    out.per_category_value.push_back(z_c);
    av_sum += av_pair(out.s_star, single.assortment);
    gap_sum += out.z_star > 0.0 ? 100.0 * (out.z_star - z_c) / out.z_star : 0.0;
  }
  const auto k = static_cast<double>(mci.categories.size());
  out.mean_av = av_sum / k;
  out.mean_gap_percent = gap_sum / k;
  return out;
}

// --- bench harness ---------------------------------------------------------

BenchSuite suite_from_json(const nlohmann::json& j) {
  BenchSuite suite;
  if (j.contains("jobs")) suite.jobs = j.at("jobs").get<int>();
  for (const auto& cj : j.at("cells")) {
    BenchCell cell;
    cell.n = cj.at("n").get<int>();
    if (cj.contains("c_bar")) cell.c_bar = cj.at("c_bar").get<int>();
    if (cj.contains("knapsack_mu")) cell.knapsack_mu = cj.at("knapsack_mu").get<double>();
    if (!cell.c_bar && !cell.knapsack_mu) {
      throw ValidationError("bench cell needs c_bar or knapsack_mu");
    }
    cell.u_bar = cj.at("u_bar").get<int>();
    if (cj.contains("category")) cell.category = cj.at("category").get<std::string>();
    cell.seeds = cj.at("seeds").get<std::vector<std::uint64_t>>();
    cell.methods = cj.at("methods").get<std::vector<std::string>>();
    if (cj.contains("time_limit_s")) cell.time_limit_s = cj.at("time_limit_s").get<double>();
    suite.cells.push_back(std::move(cell));
  }
  return suite;
}

namespace {

Instance cell_instance(const BenchCell& cell, std::uint64_t seed) {
  if (cell.category) {
    if (!cell.c_bar) throw ValidationError("category cells use a cardinality constraint");
    return generate_category_instance(seed, cell.n, *cell.c_bar, parse_category_tag(*cell.category),
                                      cell.u_bar);
  }
  GenConstraint gc = cell.c_bar ? GenConstraint{Cardinality{*cell.c_bar}}
                                : GenConstraint{KnapsackSpec{*cell.knapsack_mu}};
  return generate_instance(seed, cell.n, gc, cell.u_bar);
}

struct RunOutcome {
  SolveResult res;
  bool exact_method = false;
  bool solved = false;
};

RunOutcome run_method(const Instance& inst, const std::string& method, double time_limit_s) {
  RunOutcome out;
  if (method == "greedy") {
    out.res = greedy_solve(inst);
    out.solved = true;
    return out;
  }
  if (method == "brute") {
    out.res = brute_force_solve(inst);
    out.exact_method = true;
    out.solved = true;
    return out;
  }
  PlubOptions opts;
  opts.time_limit_s = time_limit_s;
  if (method == "plub") {
  } else if (method == "plub+pi") {
    opts.use_pi_bounds = true;
  } else if (method == "gplub") {
    opts.use_pi_bounds = true;
    opts.warm_start = greedy_solve(inst).assortment;
  } else {
    throw ValidationError("unknown bench method: " + method);
  }
  out.res = plub_solve(inst, opts);
  out.exact_method = true;
  out.solved = !out.res.time_limit_hit && out.res.gap && *out.res.gap <= 1e-6;
  return out;
}

std::string num(double x) { return nlohmann::json(x).dump(); }

}  // namespace

nlohmann::json BenchReport::to_json() const {
  nlohmann::json j;
  j["cells"] = rows;
  j["av"] = av_rows;
  j["profile"] = profile;
  return j;
}

std::string BenchReport::rows_csv() const {
  std::ostringstream out;
  bool timings = false;
  for (const auto& r : rows) {
    if (r.contains("mean_time_s")) timings = true;
  }
  out << "n,constraint,u_bar,category,method,instances,solved,mean_objective,mean_gap_vs_exact_pct";
  if (timings) out << ",mean_time_s";
  out << "\n";
  for (const auto& r : rows) {
    out << r.at("n").get<int>() << "," << r.at("constraint").get<std::string>() << ","
        << r.at("u_bar").get<int>() << "," << r.at("category").get<std::string>() << ","
        << r.at("method").get<std::string>() << "," << r.at("instances").get<int>() << ","
        << r.at("solved").get<int>() << "," << num(r.at("mean_objective").get<double>()) << ",";
    if (r.at("mean_gap_vs_exact_pct").is_null()) {
      out << "";
    } else {
      out << num(r.at("mean_gap_vs_exact_pct").get<double>());
    }
    if (timings) {
      out << ",";
      if (r.contains("mean_time_s") && !r.at("mean_time_s").is_null()) {
        out << num(r.at("mean_time_s").get<double>());
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string BenchReport::av_csv() const {
  std::ostringstream out;
  out << "n,constraint,category,u_bars,seeds,mean_av\n";
  for (const auto& r : av_rows) {
    out << r.at("n").get<int>() << "," << r.at("constraint").get<std::string>() << ","
        << r.at("category").get<std::string>() << "," << r.at("u_bars").get<int>() << ","
        << r.at("seeds").get<int>() << "," << num(r.at("mean_av").get<double>()) << "\n";
  }
  return out.str();
}

std::string BenchReport::profile_csv() const {
  std::ostringstream out;
  out << "method,kind,value,cumulative_count\n";
  for (const auto& r : profile) {
    out << r.at("method").get<std::string>() << "," << r.at("kind").get<std::string>() << ","
        << num(r.at("value").get<double>()) << "," << r.at("cumulative_count").get<int>() << "\n";
  }
  return out.str();
}

BenchReport bench(const BenchSuite& suite, bool include_timings) {
  struct Task {
    std::size_t cell;
    std::size_t seed_idx;
    std::size_t method_idx;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < suite.cells.size(); ++c) {
    for (std::size_t s = 0; s < suite.cells[c].seeds.size(); ++s) {
      for (std::size_t m = 0; m < suite.cells[c].methods.size(); ++m) {
        tasks.push_back({c, s, m});
      }
    }
  }
  std::vector<RunOutcome> outcomes(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) break;
      const Task& task = tasks[t];
      const BenchCell& cell = suite.cells[task.cell];
      const Instance inst = cell_instance(cell, cell.seeds[task.seed_idx]);
      outcomes[t] = run_method(inst, cell.methods[task.method_idx], cell.time_limit_s);
    }
  };
  const int jobs = std::max(1, suite.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  auto outcome_at = [&](std::size_t cell, std::size_t seed_idx,
                        std::size_t method_idx) -> const RunOutcome& {
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      if (tasks[t].cell == cell && tasks[t].seed_idx == seed_idx &&
          tasks[t].method_idx == method_idx) {
        return outcomes[t];
      }
    }
    throw std::logic_error("bench task lookup failed");
  };

  BenchReport report;
  auto constraint_label = [](const BenchCell& cell) {
    if (cell.c_bar) return "card:" + std::to_string(*cell.c_bar);
    std::ostringstream s;
    s << "knap:" << *cell.knapsack_mu;
    return s.str();
  };

  for (std::size_t c = 0; c < suite.cells.size(); ++c) {
    const BenchCell& cell = suite.cells[c];
    for (std::size_t m = 0; m < cell.methods.size(); ++m) {
      int solved = 0;
      double obj_sum = 0.0, time_sum = 0.0;
      double gap_sum = 0.0;
      int gap_count = 0;
      for (std::size_t s = 0; s < cell.seeds.size(); ++s) {
        const RunOutcome& oc = outcome_at(c, s, m);
        obj_sum += oc.res.objective;
        if (oc.solved) {
          ++solved;
          time_sum += oc.res.wall_time_s;
        }
        if (!oc.exact_method) {
          // gap against the best exact objective available for this seed
          double best_exact = -1.0;
          for (std::size_t m2 = 0; m2 < cell.methods.size(); ++m2) {
            const RunOutcome& other = outcome_at(c, s, m2);
            if (other.exact_method && other.solved) {
              best_exact = std::max(best_exact, other.res.objective);
            }
          }
          if (best_exact > 0.0) {
            gap_sum += 100.0 * (best_exact - oc.res.objective) / best_exact;
            ++gap_count;
          }
        }
      }
      nlohmann::json row;
      row["n"] = cell.n;
      row["constraint"] = constraint_label(cell);
      row["u_bar"] = cell.u_bar;
      row["category"] = cell.category.value_or("");
      row["method"] = cell.methods[m];
      row["instances"] = static_cast<int>(cell.seeds.size());
      row["solved"] = solved;
      row["mean_objective"] =
          cell.seeds.empty() ? 0.0 : obj_sum / static_cast<double>(cell.seeds.size());
      row["mean_gap_vs_exact_pct"] =
          gap_count > 0 ? nlohmann::json(gap_sum / gap_count) : nlohmann::json(nullptr);
      if (include_timings) {
        row["mean_time_s"] =
            solved > 0 ? nlohmann::json(time_sum / solved) : nlohmann::json(nullptr);
      }
      report.rows.push_back(std::move(row));
    }
  }

  // AV across u_bar: group cells that differ only in u_bar, take the first
  // exact method's assortments per seed
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t c = 0; c < suite.cells.size(); ++c) {
    const BenchCell& cell = suite.cells[c];
    std::ostringstream key;
    key << cell.n << "|" << constraint_label(cell) << "|" << cell.category.value_or("") << "|";
    for (auto s : cell.seeds) key << s << ",";
    groups[key.str()].push_back(c);
  }
  for (const auto& [key, members] : groups) {
    (void)key;
    if (members.size() < 2) continue;
    const BenchCell& first = suite.cells[members.front()];
    double av_sum = 0.0;
    int av_count = 0;
    for (std::size_t s = 0; s < first.seeds.size(); ++s) {
      std::vector<Assortment> across_u;
      for (std::size_t c : members) {
        const BenchCell& cell = suite.cells[c];
        for (std::size_t m = 0; m < cell.methods.size(); ++m) {
          const RunOutcome& oc = outcome_at(c, s, m);
          if (oc.exact_method && oc.solved) {
            across_u.push_back(oc.res.assortment);
            break;
          }
        }
      }
      if (across_u.size() >= 2) {
        av_sum += assortment_variation(across_u);
        ++av_count;
      }
    }
    if (av_count > 0) {
      nlohmann::json row;
      row["n"] = first.n;
      row["constraint"] = constraint_label(first);
      row["category"] = first.category.value_or("");
      row["u_bars"] = static_cast<int>(members.size());
      row["seeds"] = av_count;
      row["mean_av"] = av_sum / av_count;
      report.av_rows.push_back(std::move(row));
    }
  }

  // cumulative performance profile
  std::map<std::string, std::vector<double>> solved_times;
  std::map<std::string, std::vector<double>> unsolved_gaps;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const std::string& method = suite.cells[tasks[t].cell].methods[tasks[t].method_idx];
    const RunOutcome& oc = outcomes[t];
    if (!oc.exact_method) continue;
    if (oc.solved) {
      solved_times[method].push_back(oc.res.wall_time_s);
    } else if (oc.res.upper_bound) {
      const double abs_gap = std::max(1e-300, *oc.res.upper_bound - oc.res.objective);
      unsolved_gaps[method].push_back(std::log10(abs_gap));
    }
  }
  if (include_timings) {
    for (auto& [method, times] : solved_times) {
      std::sort(times.begin(), times.end());
      int cum = 0;
      for (double v : times) {
        nlohmann::json row;
        row["method"] = method;
        row["kind"] = "time_s";
        row["value"] = v;
        row["cumulative_count"] = ++cum;
        report.profile.push_back(std::move(row));
      }
    }
  }
  for (auto& [method, gaps] : unsolved_gaps) {
    std::sort(gaps.begin(), gaps.end());
    int cum = 0;
    for (double v : gaps) {
      nlohmann::json row;
      row["method"] = method;
      row["kind"] = "log10_abs_gap";
      row["value"] = v;
      row["cumulative_count"] = ++cum;
      report.profile.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace assort

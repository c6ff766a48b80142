#include "assort/plub.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "assort/model.hpp"
#include "assort/multicat.hpp"

namespace assort {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kPruneMargin = 1e-12;

double category_theta(const CategoryModel& cat, const std::vector<int>& complement) {
  return detail::worst_case_raw(cat.leave_prob, cat.eta, cat.u_bar, complement).theta;
}

std::optional<Clock::time_point> deadline_from(std::optional<double> seconds) {
  if (!seconds || !std::isfinite(*seconds)) return std::nullopt;
  return Clock::now() +
         std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(*seconds));
}

// ---------------------------------------------------------------------------
// Master problem: DFS branch and bound over include/exclude decisions.
// Branch order is descending weighted nu_i * r_i, include first.
// ---------------------------------------------------------------------------

struct MasterSearch {
  const MultiCategoryInstance& mci;
  const std::vector<PiecewiseUpperBound>& h;
  const MasterOptions& opts;
  int n;
  std::size_t n_cats;
  const Cardinality* card;

  std::vector<int> order;                           // 0-based, branch order
  std::vector<double> suffix_max_r;                 // over order[idx..]
  std::vector<std::vector<double>> suffix_min_out;  // per cat, over order[idx..]

  std::vector<char> decided_out;  // eliminated or branched-out products
  std::vector<char> in_mask;
  std::vector<int> in_sorted;  // chosen ids, ascending

  double best_val = 0.0;
  std::vector<int> best_ids;
  bool has_best = false;
  long long nodes = 0;
  bool completed = true;
  std::optional<Clock::time_point> deadline;

  MasterSearch(const MultiCategoryInstance& m, const std::vector<PiecewiseUpperBound>& hh,
               const MasterOptions& o)
      : mci(m),
        h(hh),
        opts(o),
        n(m.n),
        n_cats(m.categories.size()),
        card(std::get_if<Cardinality>(&m.constraint)) {}

  void prepare() {
    std::vector<double> score(static_cast<std::size_t>(n), 0.0);
    for (const auto& cat : mci.categories) {
      for (int i = 0; i < n; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        score[iu] += cat.weight * cat.mnl_weight[iu] * mci.revenue[iu];
      }
    }
    for (int i = 0; i < n; ++i) {
      if (opts.eliminated.empty() || !opts.eliminated[static_cast<std::size_t>(i)]) {
        order.push_back(i);
      }
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return score[static_cast<std::size_t>(a)] > score[static_cast<std::size_t>(b)];
    });

    suffix_max_r.assign(order.size() + 1, 0.0);
    for (std::size_t k = order.size(); k-- > 0;) {
      suffix_max_r[k] =
          std::max(suffix_max_r[k + 1], mci.revenue[static_cast<std::size_t>(order[k])]);
    }
    suffix_min_out.assign(n_cats, std::vector<double>(order.size() + 1, 1.0));
    if (opts.pi_bounds != nullptr) {
      for (std::size_t c = 0; c < n_cats; ++c) {
        for (std::size_t k = order.size(); k-- > 0;) {
          suffix_min_out[c][k] =
              std::min(suffix_min_out[c][k + 1],
                       opts.pi_bounds->without_product[c][static_cast<std::size_t>(order[k])]);
        }
      }
    }

    decided_out.assign(static_cast<std::size_t>(n), 0);
    if (!opts.eliminated.empty()) {
      for (int i = 0; i < n; ++i) {
        decided_out[static_cast<std::size_t>(i)] = opts.eliminated[static_cast<std::size_t>(i)];
      }
    }
    in_mask.assign(static_cast<std::size_t>(n), 0);
    best_val = opts.incumbent - 2.0 * kPruneMargin;
    deadline = deadline_from(opts.time_limit_s);
  }

  bool out_of_time() {
    if (!deadline || (nodes & 1023) != 0) return false;
    if (Clock::now() >= *deadline) completed = false;
    return !completed;
  }

  std::vector<int> complement_of_chosen() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n) - in_sorted.size());
    for (int i = 0; i < n; ++i) {
      if (!in_mask[static_cast<std::size_t>(i)]) out.push_back(i);
    }
    return out;
  }

  // Exact surrogate value of the chosen set; every product outside it counts
  // as excluded for the caps.
  void evaluate_leaf() {
    const auto complement = complement_of_chosen();
    double value = 0.0;
    for (std::size_t c = 0; c < n_cats; ++c) {
      const auto& cat = mci.categories[c];
      double denom = 1.0, num = 0.0;
      for (int id : in_sorted) {
        const auto i = static_cast<std::size_t>(id - 1);
        denom += cat.mnl_weight[i];
        num += cat.mnl_weight[i] * mci.revenue[i];
      }
      double cap = 1.0;
      if (opts.pi_bounds != nullptr) {
        for (int i = 0; i < n; ++i) {
          const auto iu = static_cast<std::size_t>(i);
          cap = std::min(cap, in_mask[iu] ? opts.pi_bounds->with_product[c][iu]
                                          : opts.pi_bounds->without_product[c][iu]);
        }
      }
      const double pi_bar = std::min(h[c].value(category_theta(cat, complement)), cap);
      value += cat.weight * (pi_bar * (num / denom));
    }
    if (value > best_val) {
      best_val = value;
      best_ids = in_sorted;
      has_best = true;
    }
  }

  void dfs(std::size_t idx, const std::vector<double>& theta_sup, const std::vector<double>& cap) {
    ++nodes;
    if (!completed || out_of_time()) return;

    if (idx == order.size() ||
        (card != nullptr && static_cast<int>(in_sorted.size()) >= card->c_bar)) {
      evaluate_leaf();
      return;
    }

    if (!opts.disable_pruning && has_best) {
      double max_r = suffix_max_r[idx];
      for (int id : in_sorted) {
        max_r = std::max(max_r, mci.revenue[static_cast<std::size_t>(id - 1)]);
      }
      double bound = 0.0;
      for (std::size_t c = 0; c < n_cats; ++c) {
        bound += mci.categories[c].weight * std::min(h[c].value(theta_sup[c]), cap[c]);
      }
      bound *= max_r;
      if (bound < best_val - kPruneMargin) return;
    }

    const int i = order[idx];
    const auto iu = static_cast<std::size_t>(i);

    // include branch
    {
      auto pos = std::lower_bound(in_sorted.begin(), in_sorted.end(), i + 1);
      in_sorted.insert(pos, i + 1);
      Assortment candidate;
      candidate.members = in_sorted;
      if (constraint_feasible(mci.constraint, candidate)) {
        in_mask[iu] = 1;
        std::vector<double> cap_in = cap;
        if (opts.pi_bounds != nullptr) {
          for (std::size_t c = 0; c < n_cats; ++c) {
            cap_in[c] = std::min(cap_in[c], opts.pi_bounds->with_product[c][iu]);
          }
        }
        dfs(idx + 1, theta_sup, cap_in);
        in_mask[iu] = 0;
      }
      in_sorted.erase(std::lower_bound(in_sorted.begin(), in_sorted.end(), i + 1));
    }
    if (!completed) return;

    // exclude branch
    {
      decided_out[iu] = 1;
      std::vector<double> cap_out = cap;
      if (opts.pi_bounds != nullptr) {
        for (std::size_t c = 0; c < n_cats; ++c) {
          cap_out[c] = std::min(cap_out[c], opts.pi_bounds->without_product[c][iu]);
        }
      }
      std::vector<int> complement;
      complement.reserve(static_cast<std::size_t>(n));
      for (int p = 0; p < n; ++p) {
        if (decided_out[static_cast<std::size_t>(p)]) complement.push_back(p);
      }
      std::vector<double> theta_out(n_cats);
      for (std::size_t c = 0; c < n_cats; ++c) {
        theta_out[c] = category_theta(mci.categories[c], complement);
      }
      dfs(idx + 1, theta_out, cap_out);
      decided_out[iu] = 0;
    }
  }

  MasterResult run() {
    prepare();
    std::vector<int> root_complement;
    for (int i = 0; i < n; ++i) {
      if (decided_out[static_cast<std::size_t>(i)]) root_complement.push_back(i);
    }
    std::vector<double> theta0(n_cats);
    for (std::size_t c = 0; c < n_cats; ++c) {
      theta0[c] = category_theta(mci.categories[c], root_complement);
    }
    std::vector<double> cap0(n_cats, 1.0);
    if (opts.pi_bounds != nullptr && !opts.eliminated.empty()) {
      for (std::size_t c = 0; c < n_cats; ++c) {
        for (int i = 0; i < n; ++i) {
          if (opts.eliminated[static_cast<std::size_t>(i)]) {
            cap0[c] = std::min(
                cap0[c], opts.pi_bounds->without_product[c][static_cast<std::size_t>(i)]);
          }
        }
      }
    }
    dfs(0, theta0, cap0);
    if (!has_best) {
      // nothing beat the priming value; the empty assortment is the fallback
      in_sorted.clear();
      std::fill(in_mask.begin(), in_mask.end(), 0);
      best_val = -std::numeric_limits<double>::infinity();
      evaluate_leaf();
    }
    MasterResult out;
    out.assortment = Assortment{best_ids};
    out.value = best_val;
    out.nodes = nodes;
    out.completed = completed;
    return out;
  }
};

}  // namespace

std::pair<double, double> theta_bounds(const Instance& inst) {
  return {worst_case_value(inst, Assortment{}).theta, 0.0};
}

MasterResult solve_master(const MultiCategoryInstance& mci,
                          const std::vector<PiecewiseUpperBound>& h, const MasterOptions& opts) {
  if (h.size() != mci.categories.size()) {
    throw DomainError("one piecewise bound per category is required");
  }
  MasterSearch search(mci, h, opts);
  return search.run();
}

std::pair<Assortment, double> solve_master(const Instance& inst, const PiecewiseUpperBound& h,
                                           const std::vector<int>& eliminated_ids,
                                           const PiBounds* pi_bounds, Money incumbent) {
  const auto mci = MultiCategoryInstance::from_single(inst);
  MasterOptions opts;
  if (!eliminated_ids.empty()) {
    opts.eliminated.assign(static_cast<std::size_t>(inst.n), 0);
    for (int id : eliminated_ids) opts.eliminated[static_cast<std::size_t>(id - 1)] = 1;
  }
  opts.pi_bounds = pi_bounds;
  opts.incumbent = incumbent;
  const auto res = solve_master(mci, {h}, opts);
  return {res.assortment, res.value};
}

// ---------------------------------------------------------------------------
// Exact per-product staying-probability caps (maximize pi over feasible sets
// forced to contain / exclude one product; monotone bound prunes).
// ---------------------------------------------------------------------------

namespace {

struct MaxPiSearch {
  const CategoryModel& cat;
  const Constraint& constraint;
  int n;
  int forced_in;   // 0-based index or -1
  int forced_out;  // 0-based index or -1

  MaxPiSearch(const CategoryModel& c, const Constraint& cons, int nn, int fin, int fout)
      : cat(c), constraint(cons), n(nn), forced_in(fin), forced_out(fout) {}

  std::vector<int> order;
  std::vector<char> in_mask;
  std::vector<int> in_sorted;
  double best = 0.0;
  bool has_best = false;

  double pi_with_free(std::size_t idx) const {
    std::vector<char> as_if = in_mask;
    for (std::size_t k = idx; k < order.size(); ++k) {
      as_if[static_cast<std::size_t>(order[k])] = 1;
    }
    std::vector<int> complement;
    for (int i = 0; i < n; ++i) {
      if (!as_if[static_cast<std::size_t>(i)]) complement.push_back(i);
    }
    return detail::worst_case_raw(cat.leave_prob, cat.eta, cat.u_bar, complement).pi;
  }

  bool can_take_all(std::size_t idx) const {
    Assortment s;
    s.members = in_sorted;
    for (std::size_t k = idx; k < order.size(); ++k) s = s.with(order[k] + 1);
    return constraint_feasible(constraint, s);
  }

  void record(double pi) {
    if (!has_best || pi > best) {
      best = pi;
      has_best = true;
    }
  }

  void dfs(std::size_t idx) {
    const double bound = pi_with_free(idx);
    if (has_best && bound <= best - kPruneMargin) return;

    if (idx == order.size()) {
      record(pi_with_free(idx));  // no free products left: exact value
      return;
    }
    if (can_take_all(idx)) {
      record(bound);  // monotone, so taking everything left is optimal here
      return;
    }

    const int i = order[idx];
    const auto iu = static_cast<std::size_t>(i);
    Assortment candidate;
    candidate.members = in_sorted;
    candidate = candidate.with(i + 1);
    if (constraint_feasible(constraint, candidate)) {
      in_mask[iu] = 1;
      in_sorted = candidate.members;
      dfs(idx + 1);
      in_sorted.erase(std::lower_bound(in_sorted.begin(), in_sorted.end(), i + 1));
      in_mask[iu] = 0;
    }
    dfs(idx + 1);
  }

  double run() {
    if (cat.u_bar == 0) return 1.0;
    in_mask.assign(static_cast<std::size_t>(n), 0);
    std::vector<double> influence(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      for (int k = 0; k < cat.u_bar; ++k) {
        influence[iu] = std::max(influence[iu],
                                 cat.eta[iu][static_cast<std::size_t>(k)] * cat.leave_prob[iu]);
      }
    }
    for (int i = 0; i < n; ++i) {
      if (i == forced_in || i == forced_out) continue;
      order.push_back(i);
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return influence[static_cast<std::size_t>(a)] > influence[static_cast<std::size_t>(b)];
    });
    if (forced_in >= 0) {
      in_mask[static_cast<std::size_t>(forced_in)] = 1;
      in_sorted.push_back(forced_in + 1);
    }
    dfs(0);
    return best;
  }
};

}  // namespace

PiBounds pi_bounds_per_product(const MultiCategoryInstance& mci) {
  PiBounds out;
  const auto nu = static_cast<std::size_t>(mci.n);
  out.with_product.assign(mci.categories.size(), std::vector<double>(nu, 1.0));
  out.without_product.assign(mci.categories.size(), std::vector<double>(nu, 1.0));
  for (std::size_t c = 0; c < mci.categories.size(); ++c) {
    for (int i = 0; i < mci.n; ++i) {
      MaxPiSearch with_i(mci.categories[c], mci.constraint, mci.n, i, -1);
      out.with_product[c][static_cast<std::size_t>(i)] = with_i.run();
      MaxPiSearch without_i(mci.categories[c], mci.constraint, mci.n, -1, i);
      out.without_product[c][static_cast<std::size_t>(i)] = without_i.run();
    }
  }
  return out;
}

PiBounds pi_bounds_per_product(const Instance& inst) {
  return pi_bounds_per_product(MultiCategoryInstance::from_single(inst));
}

std::vector<int> eliminate_products_supervalid(const Instance& inst, const LambdaLadder& ladder,
                                               Money lower_bound) {
  if (inst.u_bar != 1) {
    throw UnsupportedError("super-valid elimination requires exactly one top-priority position");
  }
  if (ladder.breakpoints.empty()) return {};
  auto it = std::upper_bound(ladder.breakpoints.begin(), ladder.breakpoints.end(), lower_bound);
  if (it == ladder.breakpoints.begin()) return {};
  const auto l = static_cast<std::size_t>(std::distance(ladder.breakpoints.begin(), it)) - 1;
  const Assortment& keep = ladder.assortments.at(l);
  std::vector<int> removed;
  for (int id = 1; id <= inst.n; ++id) {
    if (!keep.contains(id)) removed.push_back(id);
  }
  return removed;
}

// ---------------------------------------------------------------------------
// Cutting-plane loop.
// ---------------------------------------------------------------------------

namespace detail {

SolveResult plub_core(const MultiCategoryInstance& mci, const PlubOptions& opts) {
  if (std::holds_alternative<Unconstrained>(mci.constraint)) {
    throw UnsupportedError("the cutting-plane solver expects a cardinality or knapsack constraint");
  }
  const auto start = Clock::now();
  const auto deadline = deadline_from(opts.time_limit_s);

  const std::size_t n_cats = mci.categories.size();
  std::vector<int> all_products;
  for (int i = 0; i < mci.n; ++i) all_products.push_back(i);
  std::vector<PiecewiseUpperBound> h;
  h.reserve(n_cats);
  for (const auto& cat : mci.categories) {
    h.emplace_back(category_theta(cat, all_products), 0.0);
  }

  std::optional<PiBounds> pi_bounds;
  if (opts.use_pi_bounds) pi_bounds = pi_bounds_per_product(mci);

  // super-valid elimination needs the single-category ladder with u_bar == 1
  std::optional<LambdaLadder> ladder;
  Instance single;
  const bool supervalid_active =
      opts.use_supervalid && n_cats == 1 && mci.categories.front().u_bar == 1;
  if (supervalid_active) {
    single = mci.category_instance(0);
    Instance relaxed = single;
    relaxed.constraint = Unconstrained{};
    ladder = solve_unconstrained_u1(relaxed).ladder;
  }

  double incumbent = 0.0;
  Assortment best_s;
  SolveResult res;

  if (opts.warm_start) {
    const Assortment& ws = *opts.warm_start;
    for (int id : ws.members) {
      if (id < 1 || id > mci.n) throw DomainError("warm start contains an out-of-range id");
    }
    if (!constraint_feasible(mci.constraint, ws)) {
      throw DomainError("warm start violates the feasibility constraint");
    }
    incumbent = expected_revenue_multicat(mci, ws);
    best_s = ws;
    const auto complement = detail::complement_indices(mci.n, ws);
    for (std::size_t c = 0; c < n_cats; ++c) {
      h[c].insert(category_theta(mci.categories[c], complement));
    }
  }

  std::vector<char> eliminated;
  auto refresh_elimination = [&]() {
    if (!supervalid_active) return;
    const auto removed = eliminate_products_supervalid(single, *ladder, incumbent);
    eliminated.assign(static_cast<std::size_t>(mci.n), 0);
    for (int id : removed) eliminated[static_cast<std::size_t>(id - 1)] = 1;
  };
  refresh_elimination();

  double ub = 0.0;
  bool have_ub = false;
  long long total_nodes = 0;
  long long iters = 0;

  while (true) {
    MasterOptions mopts;
    mopts.eliminated = eliminated;
    mopts.pi_bounds = pi_bounds ? &*pi_bounds : nullptr;
    mopts.incumbent = incumbent;
    if (deadline) {
      const double remaining = std::chrono::duration<double>(*deadline - Clock::now()).count();
      if (remaining <= 0.0) {
        res.time_limit_hit = true;
        break;
      }
      mopts.time_limit_s = remaining;
    }

    const MasterResult master = solve_master(mci, h, mopts);
    total_nodes += master.nodes;
    ++iters;
    if (!master.completed) {
      res.time_limit_hit = true;
      break;
    }
    ub = have_ub ? std::min(ub, master.value) : master.value;
    have_ub = true;

    const Assortment& s_star = master.assortment;
    const auto complement = detail::complement_indices(mci.n, s_star);
    std::vector<double> theta_star(n_cats);
    for (std::size_t c = 0; c < n_cats; ++c) {
      theta_star[c] = category_theta(mci.categories[c], complement);
    }
    const double exact = expected_revenue_multicat(mci, s_star);
    if (exact > incumbent) {
      incumbent = exact;
      best_s = s_star;
      refresh_elimination();
    }
    res.trace.emplace_back(ub, incumbent);

    bool done = true;
    for (std::size_t c = 0; c < n_cats; ++c) {
      double cap = 1.0;
      if (pi_bounds) {
        for (int i = 0; i < mci.n; ++i) {
          const auto iu = static_cast<std::size_t>(i);
          cap = std::min(cap, s_star.contains(i + 1) ? pi_bounds->with_product[c][iu]
                                                     : pi_bounds->without_product[c][iu]);
        }
      }
      const double pi_prime = std::min(h[c].value(theta_star[c]), cap);
      if (pi_prime - std::exp(theta_star[c]) > opts.tol) done = false;
    }
    const double belt = std::max(opts.tol, 1e-12) * std::max(incumbent, 1.0);
    if (done && ub - incumbent <= belt) break;

    bool progress = false;
    for (std::size_t c = 0; c < n_cats; ++c) {
      if (h[c].value(theta_star[c]) > std::exp(theta_star[c])) {
        progress = h[c].insert(theta_star[c]) || progress;
      }
    }
    if (!progress) break;  // bound already exact at every visited theta
  }

  res.assortment = best_s;
  res.objective = incumbent;
  if (have_ub) {
    res.upper_bound = ub;
    res.gap = std::max(0.0, ub - incumbent) / std::max(incumbent, 1e-12);
  }
  res.iterations = iters;
  res.nodes = total_nodes;
  res.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
  return res;
}

}  // namespace detail

SolveResult plub_solve(const Instance& inst, const PlubOptions& opts) {
  return detail::plub_core(MultiCategoryInstance::from_single(inst), opts);
}

}  // namespace assort

#include "assort/instances.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "assort/model.hpp"
#include "assort/multicat.hpp"

namespace assort {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Range {
  double lo, hi;
};

double draw(std::mt19937_64& rng, Range r) { return r.lo + (r.hi - r.lo) * uniform01(rng); }

constexpr Range kAux{0.75, 1.25};
constexpr Range kCat1{0.0, 0.2};
constexpr Range kCat2{0.4, 0.6};
constexpr Range kCat3{0.8, 1.0};

std::vector<Range> base_ranges(CategoryTag tag) {
  switch (tag) {
    case CategoryTag::One: return {kCat1};
    case CategoryTag::Two: return {kCat2};
    case CategoryTag::Three: return {kCat3};
    case CategoryTag::OneTwo: return {kCat1, kCat2};
    case CategoryTag::OneThree: return {kCat1, kCat3};
    case CategoryTag::TwoThree: return {kCat2, kCat3};
    case CategoryTag::OneTwoThree: return {kCat1, kCat2, kCat3};
  }
  throw ValidationError("unknown category tag");
}

Instance generate_core(std::uint64_t seed, int n, const GenConstraint& constraint, int u_bar,
                       const std::vector<Range>& o_ranges) {
  if (n < 1) throw ValidationError("instance needs at least one product");
  if (u_bar < 0) throw ValidationError("u_bar must be nonnegative");
  std::mt19937_64 rng(seed);

  Instance inst;
  inst.n = n;
  inst.u_bar = u_bar;
  inst.revenue.resize(static_cast<std::size_t>(n));
  inst.mnl_weight.resize(static_cast<std::size_t>(n));
  inst.leave_prob.resize(static_cast<std::size_t>(n));
  inst.eta.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(u_bar)));

  for (int i = 0; i < n; ++i) {
    const double a = draw(rng, kAux);
    const double b = draw(rng, kAux);
    const double d = draw(rng, kAux);
    Range o_range = o_ranges.front();
    if (o_ranges.size() > 1) {
      const double pick = uniform01(rng) * static_cast<double>(o_ranges.size());
      auto idx = static_cast<std::size_t>(pick);
      if (idx >= o_ranges.size()) idx = o_ranges.size() - 1;
      o_range = o_ranges[idx];
    }
    const double o = draw(rng, o_range);

    const auto iu = static_cast<std::size_t>(i);
    inst.revenue[iu] = 10.0 * o * o * a;
    inst.mnl_weight[iu] = 10.0 * (1.0 - o) * b;
    inst.leave_prob[iu] = 0.4 * (1.0 - o) * d;
    for (int k = 1; k <= u_bar; ++k) {
      inst.eta[iu][static_cast<std::size_t>(k - 1)] =
          2.0 / (1.0 + std::exp(-static_cast<double>(k - 1) * (1.0 - o)));
    }
  }

  if (const auto* plain = std::get_if<Unconstrained>(&constraint)) {
    inst.constraint = *plain;
  } else if (const auto* card = std::get_if<Cardinality>(&constraint)) {
    inst.constraint = *card;
  } else if (const auto* given = std::get_if<Knapsack>(&constraint)) {
    inst.constraint = *given;
  } else {
    const auto& spec = std::get<KnapsackSpec>(constraint);
    if (!(spec.mu > kAux.hi)) {
      throw ValidationError("knapsack capacity must exceed the largest possible weight");
    }
    Knapsack drawn;
    drawn.mu = spec.mu;
    drawn.gamma.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) drawn.gamma[static_cast<std::size_t>(i)] = draw(rng, kAux);
    inst.constraint = std::move(drawn);
  }

  inst.validate();
  return inst;
}

}  // namespace

CategoryTag parse_category_tag(const std::string& s) {
  if (s == "1") return CategoryTag::One;
  if (s == "2") return CategoryTag::Two;
  if (s == "3") return CategoryTag::Three;
  if (s == "1,2") return CategoryTag::OneTwo;
  if (s == "1,3") return CategoryTag::OneThree;
  if (s == "2,3") return CategoryTag::TwoThree;
  if (s == "1,2,3") return CategoryTag::OneTwoThree;
  throw ValidationError("unknown category tag: " + s);
}

std::string to_string(CategoryTag tag) {
  switch (tag) {
    case CategoryTag::One: return "1";
    case CategoryTag::Two: return "2";
    case CategoryTag::Three: return "3";
    case CategoryTag::OneTwo: return "1,2";
    case CategoryTag::OneThree: return "1,3";
    case CategoryTag::TwoThree: return "2,3";
    case CategoryTag::OneTwoThree: return "1,2,3";
  }
  return "?";
}

Instance generate_instance(std::uint64_t seed, int n, const GenConstraint& constraint, int u_bar) {
  return generate_core(seed, n, constraint, u_bar, {Range{0.0, 1.0}});
}

Instance generate_category_instance(std::uint64_t seed, int n, int c_bar, CategoryTag tag,
                                    int u_bar) {
  return generate_core(seed, n, Cardinality{c_bar}, u_bar, base_ranges(tag));
}

MultiCategoryInstance generate_multicat_instance(std::uint64_t seed, int n, int c_bar,
                                                 const std::vector<CategoryTag>& tags,
                                                 const std::vector<double>& weights,
                                                 int u_bar) {
  if (tags.empty() || tags.size() != weights.size()) {
    throw ValidationError("one weight per category tag is required");
  }
  std::mt19937_64 rng(seed);

  MultiCategoryInstance mci;
  mci.n = n;
  mci.constraint = Cardinality{c_bar};
  mci.revenue.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double a = draw(rng, kAux);
    const double o_r = uniform01(rng);
    mci.revenue[static_cast<std::size_t>(i)] = 10.0 * o_r * o_r * a;
  }

  for (std::size_t c = 0; c < tags.size(); ++c) {
    const auto ranges = base_ranges(tags[c]);
    CategoryModel cat;
    cat.weight = weights[c];
    cat.u_bar = u_bar;
    cat.mnl_weight.resize(static_cast<std::size_t>(n));
    cat.leave_prob.resize(static_cast<std::size_t>(n));
    cat.eta.assign(static_cast<std::size_t>(n),
                   std::vector<double>(static_cast<std::size_t>(u_bar)));
    for (int i = 0; i < n; ++i) {
      const double b = draw(rng, kAux);
      const double d = draw(rng, kAux);
      Range o_range = ranges.front();
      if (ranges.size() > 1) {
        const double pick = uniform01(rng) * static_cast<double>(ranges.size());
        auto idx = static_cast<std::size_t>(pick);
        if (idx >= ranges.size()) idx = ranges.size() - 1;
        o_range = ranges[idx];
      }
      const double o = draw(rng, o_range);
      const auto iu = static_cast<std::size_t>(i);
      cat.mnl_weight[iu] = 10.0 * (1.0 - o) * b;
      cat.leave_prob[iu] = 0.4 * (1.0 - o) * d;
      for (int k = 1; k <= u_bar; ++k) {
        cat.eta[iu][static_cast<std::size_t>(k - 1)] =
            2.0 / (1.0 + std::exp(-static_cast<double>(k - 1) * (1.0 - o)));
      }
    }
    mci.categories.push_back(std::move(cat));
  }
  mci.validate();
  return mci;
}

namespace {

template <typename Eval>
SolveResult brute_force_impl(int n, const Constraint& constraint, int max_n, Eval eval) {
  if (n > max_n) {
    throw ValidationError("instance too large for exhaustive enumeration");
  }
  const auto start = std::chrono::steady_clock::now();
  SolveResult res;
  res.assortment = Assortment{};
  res.objective = 0.0;
  bool first = true;
  long long evaluated = 0;

  const std::uint64_t limit = std::uint64_t{1} << n;
  std::vector<int> ids;
  ids.reserve(static_cast<std::size_t>(n));
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    ids.clear();
    for (int i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) ids.push_back(i + 1);
    }
    Assortment s;
    s.members = ids;
    if (!constraint_feasible(constraint, s)) continue;
    const double z = eval(s);
    ++evaluated;
    if (first || z > res.objective ||
        (z == res.objective && s.members < res.assortment.members)) {
      res.objective = z;
      res.assortment = s;
      first = false;
    }
  }
  res.upper_bound = res.objective;
  res.gap = 0.0;
  res.nodes = evaluated;
  res.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace

SolveResult brute_force_solve(const Instance& inst, int max_n) {
  return brute_force_impl(inst.n, inst.constraint, max_n,
                          [&](const Assortment& s) { return expected_revenue(inst, s); });
}

SolveResult brute_force_solve(const MultiCategoryInstance& mci, int max_n) {
  return brute_force_impl(mci.n, mci.constraint, max_n, [&](const Assortment& s) {
    return expected_revenue_multicat(mci, s);
  });
}

// --- serialization ---------------------------------------------------------

namespace {

nlohmann::json constraint_to_json(const Constraint& c) {
  nlohmann::json j;
  if (std::holds_alternative<Unconstrained>(c)) {
    j["type"] = "unconstrained";
  } else if (const auto* card = std::get_if<Cardinality>(&c)) {
    j["type"] = "cardinality";
    j["c_bar"] = card->c_bar;
  } else {
    const auto& ks = std::get<Knapsack>(c);
    j["type"] = "knapsack";
    j["gamma"] = ks.gamma;
    j["mu"] = ks.mu;
  }
  return j;
}

Constraint constraint_from_json(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "unconstrained") return Unconstrained{};
  if (type == "cardinality") return Cardinality{j.at("c_bar").get<int>()};
  if (type == "knapsack") {
    Knapsack ks;
    ks.gamma = j.at("gamma").get<std::vector<double>>();
    ks.mu = j.at("mu").get<double>();
    return ks;
  }
  throw ValidationError("unknown constraint type: " + type);
}

}  // namespace

nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["n"] = inst.n;
  j["u_bar"] = inst.u_bar;
  j["revenue"] = inst.revenue;
  j["mnl_weight"] = inst.mnl_weight;
  j["leave_prob"] = inst.leave_prob;
  j["eta"] = inst.eta;
  j["constraint"] = constraint_to_json(inst.constraint);
  return j;
}

Instance instance_from_json(const nlohmann::json& j) {
  Instance inst;
  inst.n = j.at("n").get<int>();
  inst.u_bar = j.at("u_bar").get<int>();
  inst.revenue = j.at("revenue").get<std::vector<double>>();
  inst.mnl_weight = j.at("mnl_weight").get<std::vector<double>>();
  inst.leave_prob = j.at("leave_prob").get<std::vector<double>>();
  inst.eta = j.at("eta").get<std::vector<std::vector<double>>>();
  inst.constraint = constraint_from_json(j.at("constraint"));
  inst.validate();
  return inst;
}

nlohmann::json instance_to_json(const MultiCategoryInstance& mci) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["n"] = mci.n;
  j["revenue"] = mci.revenue;
  j["constraint"] = constraint_to_json(mci.constraint);
  nlohmann::json cats = nlohmann::json::array();
  for (const auto& cat : mci.categories) {
    nlohmann::json cj;
    cj["weight"] = cat.weight;
    cj["mnl_weight"] = cat.mnl_weight;
    cj["leave_prob"] = cat.leave_prob;
    cj["eta"] = cat.eta;
    cj["u_bar"] = cat.u_bar;
    cats.push_back(std::move(cj));
  }
  j["categories"] = std::move(cats);
  return j;
}

MultiCategoryInstance mci_from_json(const nlohmann::json& j) {
  MultiCategoryInstance mci;
  mci.n = j.at("n").get<int>();
  mci.revenue = j.at("revenue").get<std::vector<double>>();
  mci.constraint = constraint_from_json(j.at("constraint"));
  for (const auto& cj : j.at("categories")) {
    CategoryModel cat;
    cat.weight = cj.at("weight").get<double>();
    cat.mnl_weight = cj.at("mnl_weight").get<std::vector<double>>();
    cat.leave_prob = cj.at("leave_prob").get<std::vector<double>>();
    cat.eta = cj.at("eta").get<std::vector<std::vector<double>>>();
    cat.u_bar = cj.at("u_bar").get<int>();
    mci.categories.push_back(std::move(cat));
  }
  mci.validate();
  return mci;
}

std::string instance_digest(const nlohmann::json& j) {
  const std::string dump = j.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

LoadedInstance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("malformed JSON in " + path + ": " + e.what());
  }
  LoadedInstance loaded;
  try {
    if (j.contains("categories")) {
      loaded.multi = mci_from_json(j);
      loaded.digest = instance_digest(instance_to_json(*loaded.multi));
    } else {
      loaded.single = instance_from_json(j);
      loaded.digest = instance_digest(instance_to_json(*loaded.single));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("instance file " + path + " is missing fields: " + e.what());
  }
  return loaded;
}

namespace {
void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << j.dump(2) << '\n';
}
}  // namespace

void save_instance_file(const std::string& path, const Instance& inst) {
  write_json_file(path, instance_to_json(inst));
}

void save_instance_file(const std::string& path, const MultiCategoryInstance& mci) {
  write_json_file(path, instance_to_json(mci));
}

PreferenceScenario scenario_from_json(const nlohmann::json& j) {
  PreferenceScenario sc;
  try {
    sc.lists = j.at("lists").get<std::vector<std::vector<int>>>();
    sc.weights = j.at("weights").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed scenario: ") + e.what());
  }
  return sc;
}

nlohmann::json solve_result_to_json(const SolveResult& res, const std::string& method,
                                    const std::string& instance_ref) {
  nlohmann::json j;
  j["instance_ref"] = instance_ref;
  j["method"] = method;
  j["assortment"] = res.assortment.members;
  j["objective"] = res.objective;
  j["upper_bound"] = res.upper_bound ? nlohmann::json(*res.upper_bound) : nlohmann::json(nullptr);
  j["gap"] = res.gap ? nlohmann::json(*res.gap) : nlohmann::json(nullptr);
  j["nodes"] = res.nodes;
  j["iterations"] = res.iterations;
  j["wall_time_s"] = res.wall_time_s;
  return j;
}

}  // namespace assort

#include "ordmatch/reproduce.h"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "ordmatch/distortion.h"
#include "ordmatch/generators.h"
#include "ordmatch/mechanisms.h"
#include "ordmatch/permutation.h"
#include "ordmatch/random.h"
#include "ordmatch/thin.h"

namespace ordmatch {
namespace {

int int_param(const Json& params, const char* key) { return params.at(key).get<int>(); }

std::uint64_t seed_param(const Json& params) { return params.at("seed").get<std::uint64_t>(); }

std::vector<int> identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// Running maximum of exact ratios, with +inf.
struct MaxRatio {
  std::optional<ExtRational> value;
  void add(const ExtRational& r) {
    if (!value || r > *value) value = r;
  }
  std::string str() const { return value ? value->str() : "0/1"; }
};

ReproductionRecord sd_line(const Json& params) {
  const int n = int_param(params, "n");
  const int oracle_max_n = int_param(params, "oracle_max_n");
  const auto id = identity(n);
  const LineInstance line = line_sd_instance(n, id, id);
  const Matching m = serial_dictatorship(line.instance, id);
  const Rational c = cost(m, line.metric);
  const Rational opt = min_cost_matching(line.metric).second;
  const Rational bound = pow2(n) - 1;
  ReproductionRecord r;
  r.details = {{"sd_cost", c.str()}, {"opt_cost", opt.str()}};
  bool pass = c == bound && opt == 1;
  ExtRational measured = ExtRational::ratio(c, opt);
  if (n <= oracle_max_n) {
    const DistortionReport rep = adversarial_distortion(line.instance, m);
    r.details["oracle_value"] = rep.value.str();
    measured = rep.value;
    pass = pass && rep.value == ExtRational(bound);
  }
  r.measured = measured.str();
  r.bound = bound.str();
  r.pass = pass;
  return r;
}

ReproductionRecord tree_det(const Json& params) {
  const int k = int_param(params, "k");
  const TreeInstance t = tree_instance(k);
  const int n = t.n;
  std::vector<std::optional<Metric>> metrics(n);
  std::vector<std::optional<Rational>> opts(n);
  std::optional<Rational> worst;
  bool opt_ok = true;
  std::int64_t tested = 0;
  auto visit = [&](const std::vector<int>& perm) {
    const Matching m(perm);
    const int a = unlucky_walk(t, m).chosen_agent;
    if (!metrics[a]) {
      metrics[a] = tree_adversary_metric(t, a);
      opts[a] = min_cost_matching(*metrics[a]).second;
      opt_ok = opt_ok && *opts[a] == 1;
    }
    const Rational c = cost(m, *metrics[a]);
    if (!worst || c < *worst) worst = c;
    ++tested;
  };
  const bool exhaustive = k <= 2;
  if (exhaustive) {
    for (const auto& perm : all_permutations(n)) visit(perm);
  } else {
    Rng rng(seed_param(params));
    const int samples = int_param(params, "samples");
    for (int s = 0; s < samples; ++s) visit(rng.permutation(n));
  }
  const Rational bound = Rational(2 * k + 1);
  ReproductionRecord r;
  r.measured = worst->str();
  r.bound = bound.str();
  r.pass = opt_ok && *worst >= bound;
  r.details = {{"matchings", tested}, {"exhaustive", exhaustive}, {"opt_is_one", opt_ok}};
  return r;
}

ReproductionRecord tree_frac(const Json& params) {
  const int k = int_param(params, "k");
  const TreeInstance t = tree_instance(k);
  const int n = t.n;
  std::vector<FractionalMatching> inputs;
  inputs.push_back(exact_rsd_marginals(t.instance, n));
  const int mixtures = int_param(params, "mixtures");
  const int terms = int_param(params, "terms");
  const std::uint64_t seed = seed_param(params);
  for (int i = 0; i < mixtures; ++i) inputs.push_back(random_bvn_mixture(n, terms, mix_seed(seed, i)));
  std::optional<Rational> worst;
  Rational rsd_cost;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const int a = unlucky_walk_fractional(t, inputs[i]).chosen_agent;
    const Rational c = fractional_cost(inputs[i], tree_adversary_metric(t, a));
    if (i == 0) rsd_cost = c;
    if (!worst || c < *worst) worst = c;
  }
  const Rational bound = Rational(k + 1);
  ReproductionRecord r;
  r.measured = worst->str();
  r.bound = bound.str();
  r.pass = *worst >= bound;
  r.details = {{"inputs", inputs.size()}, {"rsd_marginals_cost", rsd_cost.str()}};
  return r;
}

ReproductionRecord repmatch_bound(const Json& params) {
  const int n = int_param(params, "n");
  const int instances = int_param(params, "instances");
  const std::uint64_t seed = seed_param(params);
  const Rational bound = Rational(2 * n * n);
  MaxRatio worst;
  for (int i = 0; i < instances; ++i) {
    const Instance inst = random_instance(n, mix_seed(seed, i));
    worst.add(adversarial_distortion(inst, rep_match(inst)).value);
  }
  ReproductionRecord r;
  r.measured = worst.str();
  r.bound = bound.str();
  r.pass = !worst.value || *worst.value <= ExtRational(bound);
  r.details = {{"instances", instances}};
  return r;
}

std::pair<Instance, Metric> random_pair(int n, std::uint64_t seed, int which) {
  if (which % 2 == 0) return euclidean_random(n, 2, seed);
  Metric d = random_bipartite_metric(n, 3, seed);
  Instance inst = prefs_from_metric(d);
  return {std::move(inst), std::move(d)};
}

ReproductionRecord trsd_bound(const Json& params) {
  const int n = int_param(params, "n");
  const int pairs = int_param(params, "pairs");
  const std::uint64_t seed = seed_param(params);
  MaxRatio worst;  // E[cost] / ((m / (n + 1 - m)) * OPT)
  for (int i = 0; i < pairs; ++i) {
    const auto [inst, d] = random_pair(n, mix_seed(seed, i), i);
    const Rational opt = min_cost_matching(d).second;
    for (int m = 1; m <= n; ++m) {
      const Rational expected = fractional_cost(exact_rsd_marginals(inst, m), d);
      const Rational allowed = Rational(m, n + 1 - m) * opt;
      if (allowed.is_zero() && expected.is_zero()) continue;
      worst.add(ExtRational::ratio(expected, allowed));
    }
  }
  ReproductionRecord r;
  r.measured = worst.str();
  r.bound = Rational(1).str();
  r.pass = !worst.value || *worst.value <= ExtRational(Rational(1));
  r.details = {{"pairs", pairs}, {"measured_is", "max E[cost] / (m/(n+1-m) * OPT)"}};
  return r;
}

ReproductionRecord boston_cascade(const Json& params) {
  const int k_min = int_param(params, "k_min");
  const int k_max = int_param(params, "k_max");
  Json costs = Json::object();
  Json ratios = Json::object();
  bool pass = true;
  std::optional<Rational> previous;
  Rational last;
  for (int k = k_min; k <= k_max; ++k) {
    const BostonInstance b = boston_instance(k);
    const Rational c = cost(boston(b.instance, b.priority), b.metric);
    const Rational opt = min_cost_matching(b.metric).second;
    costs[std::to_string(k)] = c.str();
    pass = pass && opt == 1 && c >= pow2(k - 1);
    if (previous) {
      const Rational growth = c / *previous;
      ratios[std::to_string(k)] = growth.str();
      pass = pass && growth >= Rational(19, 10) && growth <= Rational(21, 10);
    }
    previous = c;
    last = c;
  }
  ReproductionRecord r;
  r.measured = last.str();
  r.bound = pow2(k_max - 1).str();
  r.pass = pass;
  r.details = {{"cost_by_k", std::move(costs)},
               {"growth_by_k", std::move(ratios)},
               {"growth_window", {"19/10", "21/10"}}};
  return r;
}

ReproductionRecord thin_cycle(const Json& params) {
  const int k = int_param(params, "k");
  const int copies = int_param(params, "copies");
  const Rational q = rational_from_json(params.at("q"));
  const CycleCounterexample c = cycle_counterexample(k, q, copies);
  const auto [edges, weight] = cut_crossing(c.p, c.even, c.cut);
  const Rational ratio = Rational(edges) / weight;
  const ThinnessReport th = thinness(c.p, c.even);
  const Rational bound = Rational(1) / q;
  ReproductionRecord r;
  r.measured = ratio.str();
  r.bound = bound.str();
  r.pass = ratio == bound && th.beta == ExtRational(bound);
  r.details = {{"cut_edges", edges},
               {"cut_weight", weight.str()},
               {"thinness", th.beta.str()},
               {"even_side_probability", even_side_probability(c).str()}};
  return r;
}

ReproductionRecord hall_rounding(const Json& params) {
  const int matrices = int_param(params, "matrices");
  const int n_max = int_param(params, "n_max");
  const int metrics = int_param(params, "metrics");
  const int terms = int_param(params, "terms");
  const std::uint64_t seed = seed_param(params);
  MaxRatio worst;  // cost / (n^2 * fractional cost)
  int rounded = 0;
  for (int i = 0; i < matrices; ++i) {
    const int n = 1 + i % n_max;
    const FractionalMatching p = random_bvn_mixture(n, terms, mix_seed(seed, 2 * i));
    const Matching m = hall_round(p);
    ++rounded;
    for (int t = 0; t < metrics; ++t) {
      const auto [inst, d] = random_pair(n, mix_seed(mix_seed(seed, 2 * i + 1), t), t);
      const Rational fc = fractional_cost(p, d) * Rational(n * n);
      const Rational c = cost(m, d);
      if (fc.is_zero() && c.is_zero()) continue;
      worst.add(ExtRational::ratio(c, fc));
    }
  }
  ReproductionRecord r;
  r.measured = worst.str();
  r.bound = Rational(1).str();
  r.pass = rounded == matrices && (!worst.value || *worst.value <= ExtRational(Rational(1)));
  r.details = {{"rounded", rounded}, {"measured_is", "max cost / (n^2 * fractional cost)"}};
  return r;
}

ReproductionRecord da_serializable(const Json& params) {
  const int n = int_param(params, "n");
  const int profiles = int_param(params, "profiles");
  const std::uint64_t seed = seed_param(params);
  const auto sigma = identity(n);
  int passed = 0;
  std::int64_t checked = 0;
  for (int i = 0; i < profiles; ++i) {
    Rng rng(seed, static_cast<std::uint64_t>(i));
    std::vector<std::vector<int>> item_prefs(n);
    for (auto& l : item_prefs) l = rng.permutation(n);
    const auto pi = sd_on_items(item_prefs);
    const DeterministicMechanism da = [&](const Instance& inst) {
      return deferred_acceptance(inst, item_prefs);
    };
    const SerializabilityResult res = serializability_check(da, pi, sigma, n);
    checked += res.instances_checked;
    const LineInstance line = line_sd_instance(n, pi, sigma);
    const bool line_ok = cost(da(line.instance), line.metric) == pow2(n) - 1;
    passed += res.serializable && line_ok;
  }
  ReproductionRecord r;
  r.measured = Rational(passed).str();
  r.bound = Rational(profiles).str();
  r.pass = passed == profiles;
  r.details = {{"instances_checked", checked}, {"measured_is", "profiles passing"}};
  return r;
}

using Runner = std::function<ReproductionRecord(const Json&)>;

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> table = {
      {"sd-line", sd_line},
      {"tree-det", tree_det},
      {"tree-frac", tree_frac},
      {"repmatch-bound", repmatch_bound},
      {"trsd-bound", trsd_bound},
      {"boston", boston_cascade},
      {"thin-cycle", thin_cycle},
      {"hall-round", hall_rounding},
      {"da-serializable", da_serializable},
  };
  return table;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = {"sd-line",    "tree-det", "tree-frac",
                                               "repmatch-bound", "trsd-bound", "boston",
                                               "thin-cycle", "hall-round", "da-serializable"};
  return ids;
}

Json default_reproduce_config() {
  return Json{
      {"sd-line", {{"n", 5}, {"oracle_max_n", 5}}},
      {"tree-det", {{"k", 3}, {"samples", 1000}, {"seed", 1}}},
      {"tree-frac", {{"k", 2}, {"mixtures", 50}, {"terms", 4}, {"seed", 1}}},
      {"repmatch-bound", {{"n", 4}, {"instances", 100}, {"seed", 1}}},
      {"trsd-bound", {{"n", 5}, {"pairs", 50}, {"seed", 1}}},
      {"boston", {{"k_min", 2}, {"k_max", 6}}},
      {"thin-cycle", {{"k", 2}, {"q", "1/2"}, {"copies", 1}}},
      {"hall-round", {{"matrices", 100}, {"n_max", 8}, {"metrics", 10}, {"terms", 5}, {"seed", 1}}},
      {"da-serializable", {{"n", 4}, {"profiles", 20}, {"seed", 1}}},
  };
}

Json experiment_params(const std::string& id, const Json& config, const Json& overrides) {
  const Json defaults = default_reproduce_config();
  if (!defaults.contains(id)) throw InvalidInput("unknown experiment: " + id);
  Json params = defaults.at(id);
  for (const Json* layer : {config.contains(id) ? &config.at(id) : nullptr, &overrides}) {
    if (layer == nullptr) continue;
    for (const auto& [key, value] : layer->items()) {
      if (!params.contains(key)) {
        throw InvalidInput("experiment " + id + " has no parameter " + key);
      }
      params[key] = value;
    }
  }
  return params;
}

ReproductionRecord run_experiment(const std::string& id, const Json& params) {
  const auto it = runners().find(id);
  if (it == runners().end()) throw InvalidInput("unknown experiment: " + id);
  const auto start = std::chrono::steady_clock::now();
  ReproductionRecord r = it->second(params);
  const auto stop = std::chrono::steady_clock::now();
  r.experiment = id;
  r.params = params;
  r.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return r;
}

Json record_to_json(const ReproductionRecord& r) {
  return Json{{"experiment", r.experiment}, {"params", r.params}, {"measured", r.measured},
              {"bound", r.bound},           {"pass", r.pass},     {"wall_ms", r.wall_ms},
              {"details", r.details}};
}

ReproductionRecord record_from_json(const Json& j) {
  ReproductionRecord r;
  r.experiment = j.at("experiment").get<std::string>();
  r.params = j.at("params");
  r.measured = j.at("measured").get<std::string>();
  r.bound = j.at("bound").get<std::string>();
  r.pass = j.at("pass").get<bool>();
  r.wall_ms = j.at("wall_ms").get<double>();
  if (j.contains("details")) r.details = j.at("details");
  return r;
}

std::string records_to_csv(const std::vector<ReproductionRecord>& records) {
  std::ostringstream out;
  out << "experiment,params,measured,bound,pass,wall_ms\n";
  for (const auto& r : records) {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", r.wall_ms);
    out << csv_quote(r.experiment) << ',' << csv_quote(r.params.dump()) << ','
        << csv_quote(r.measured) << ',' << csv_quote(r.bound) << ',' << (r.pass ? "true" : "false")
        << ',' << ms << '\n';
  }
  return out.str();
}

std::string records_to_json_text(const std::vector<ReproductionRecord>& records) {
  Json arr = Json::array();
  for (const auto& r : records) arr.push_back(record_to_json(r));
  return arr.dump(2) + "\n";
}

}  // namespace ordmatch

// ordmatch: command-line front end.

#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ordmatch/distortion.h"
#include "ordmatch/generators.h"
#include "ordmatch/json_io.h"
#include "ordmatch/mechanisms.h"
#include "ordmatch/parallel.h"
#include "ordmatch/reproduce.h"
#include "ordmatch/thin.h"

namespace {

using namespace ordmatch;

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InvalidInput("not a comma-separated integer list: " + text);
    }
  }
  return out;
}

std::vector<int> identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

void emit(const std::string& path, const Json& j) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(path, text);
  }
}

struct GenArgs {
  std::string family;
  int k = 3;
  int n = 4;
  int dim = 2;
  std::optional<std::uint64_t> seed;
  std::string eps = "0";
  std::string pi, sigma;
  std::string out, metric_out;
};

int cmd_gen(const GenArgs& a) {
  Json inst;
  std::optional<Metric> metric;
  const Rational eps = Rational::parse(a.eps);
  if (a.family == "tree") {
    TreeInstance t = tree_instance(a.k);
    inst = to_json(t.instance);
    metric = t.metric;
  } else if (a.family == "line") {
    const auto pi = a.pi.empty() ? identity(a.n) : parse_int_list(a.pi);
    const auto sigma = a.sigma.empty() ? identity(a.n) : parse_int_list(a.sigma);
    LineInstance l = line_sd_instance(a.n, pi, sigma, eps);
    inst = to_json(l.instance);
    metric = l.metric;
  } else if (a.family == "boston") {
    BostonInstance b = boston_instance(a.k, eps);
    inst = to_json(b.instance);
    inst["priority"] = b.priority;
    metric = b.metric;
  } else if (a.family == "euclid") {
    if (!a.seed) throw CLI::ValidationError("--seed", "required for the euclid family");
    auto [i, d] = euclidean_random(a.n, a.dim, *a.seed);
    inst = to_json(i);
    metric = d;
  } else {
    throw CLI::ValidationError("--family", "expected tree, line, boston or euclid");
  }
  emit(a.out, inst);
  if (!a.metric_out.empty()) emit(a.metric_out, to_json(*metric));
  return 0;
}

struct RunArgs {
  std::string mech, inst, order, item_prefs, out;
  int m = -1;
  std::optional<std::uint64_t> seed;
};

int cmd_run(const RunArgs& a) {
  const Json doc = read_json_file(a.inst);
  const Instance inst = instance_from_json(doc);
  MechanismSpec spec;
  spec.kind = parse_mechanism(a.mech);
  spec.m = a.m;
  if (!a.order.empty()) {
    spec.order = parse_int_list(a.order);
  } else if (spec.kind == MechanismKind::kBoston && doc.contains("priority")) {
    spec.order = doc["priority"].get<std::vector<int>>();
  }
  if (!a.item_prefs.empty()) {
    spec.item_prefs = read_json_file(a.item_prefs).at("item_prefs").get<std::vector<std::vector<int>>>();
  }
  if (spec.randomized()) {
    if (!a.seed) throw CLI::ValidationError("--seed", "required for randomized mechanisms");
    spec.seed = *a.seed;
  }
  emit(a.out, to_json(run_mechanism(spec, inst)));
  return 0;
}

struct DistortionArgs {
  std::string inst, match, fractional, metric, out;
  bool strict = false;
  bool full_lp = false;
};

int cmd_distortion(const DistortionArgs& a) {
  const Instance inst = instance_from_json(read_json_file(a.inst));
  if (a.match.empty() == a.fractional.empty()) {
    throw CLI::ValidationError("--match/--fractional", "give exactly one of them");
  }
  std::optional<Matching> m;
  std::optional<FractionalMatching> p;
  if (!a.match.empty()) m = matching_from_json(read_json_file(a.match), inst.n());
  if (!a.fractional.empty()) p = fractional_from_json(read_json_file(a.fractional));

  if (!a.metric.empty()) {
    const Metric d = metric_from_json(read_json_file(a.metric));
    if (!consistent(inst, d)) throw InvalidInput("metric is inconsistent with the instance");
    const Rational c = m ? cost(*m, d) : fractional_cost(*p, d);
    const auto [opt_match, opt] = min_cost_matching(d);
    const ExtRational value = c.is_zero() && opt.is_zero() ? ExtRational(Rational(1))
                                                           : ExtRational::ratio(c, opt);
    emit(a.out, Json{{"value", value.str()},
                     {"mechanism_cost", c.str()},
                     {"opt_cost", opt.str()},
                     {"witness_opt", to_json(opt_match)}});
    return 0;
  }
  DistortionOptions options;
  options.strict = a.strict;
  options.formulation = a.full_lp ? Formulation::kFullMetric : Formulation::kBipartite;
  const DistortionReport r = m ? adversarial_distortion(inst, *m, options)
                               : adversarial_distortion_fractional(inst, *p, options);
  emit(a.out, to_json(r));
  return 0;
}

int cmd_thin(const std::string& p_path, const std::string& match_path, const std::string& out) {
  const FractionalMatching p = fractional_from_json(read_json_file(p_path));
  const Matching m = matching_from_json(read_json_file(match_path), p.n());
  emit(out, to_json(thinness(p, m)));
  return 0;
}

int cmd_thin_search(const std::string& p_path, const std::string& beta, const std::string& out) {
  const FractionalMatching p = fractional_from_json(read_json_file(p_path));
  const auto m = thin_search(p, Rational::parse(beta));
  emit(out, Json{{"beta", Rational::parse(beta).str()}, {"found", m.has_value()},
                 {"matching", m ? to_json(*m) : Json(nullptr)}});
  return m ? 0 : 3;
}

int cmd_counterexample(int k, const std::string& q, int copies, const std::string& out) {
  const CycleCounterexample c = cycle_counterexample(k, Rational::parse(q), copies);
  Json cut = Json::array();
  for (std::size_t x = 0; x < c.cut.size(); ++x) {
    if (c.cut[x]) cut.push_back(x);
  }
  const auto [edges, weight] = cut_crossing(c.p, c.even, c.cut);
  emit(out, Json{{"k", k},
                 {"q", c.q.str()},
                 {"copies", copies},
                 {"fractional", to_json(c.p)},
                 {"odd", to_json(c.odd)},
                 {"even", to_json(c.even)},
                 {"cut", std::move(cut)},
                 {"cut_edges", edges},
                 {"cut_weight", weight.str()},
                 {"cut_ratio", (Rational(edges) / weight).str()},
                 {"even_side_probability", even_side_probability(c).str()}});
  return 0;
}

struct ReproduceArgs {
  std::string id;
  std::string config;
  std::vector<std::string> params;
  std::optional<int> n, k;
  std::optional<std::uint64_t> seed;
  std::string out, csv;
};

Json parse_param_value(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error&) {
    return Json(text);
  }
}

int cmd_reproduce(const ReproduceArgs& a) {
  const Json config = a.config.empty() ? Json::object() : read_json_file(a.config);
  const std::vector<std::string> ids =
      a.id == "all" ? experiment_ids() : std::vector<std::string>{a.id};
  std::vector<ReproductionRecord> records;
  for (const auto& id : ids) {
    Json overrides = Json::object();
    const Json defaults = experiment_params(id, Json::object(), Json::object());
    for (const auto& kv : a.params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw InvalidInput("--param expects key=value, got " + kv);
      overrides[kv.substr(0, eq)] = parse_param_value(kv.substr(eq + 1));
    }
    if (a.n && defaults.contains("n")) overrides["n"] = *a.n;
    if (a.k && defaults.contains("k")) overrides["k"] = *a.k;
    if (a.seed && defaults.contains("seed")) overrides["seed"] = *a.seed;
    const Json params = experiment_params(id, config, overrides);
    ReproductionRecord r = run_experiment(id, params);
    std::cerr << (r.pass ? "PASS " : "FAIL ") << id << " measured=" << r.measured
              << " bound=" << r.bound << " (" << static_cast<long>(r.wall_ms) << " ms)\n";
    records.push_back(std::move(r));
  }
  const std::string text = records_to_json_text(records);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(a.out, text);
  }
  if (!a.csv.empty()) write_file_atomic(a.csv, records_to_csv(records));
  for (const auto& r : records) {
    if (!r.pass) return 1;
  }
  return 0;
}

int cmd_export(const std::string& in, const std::string& format, const std::string& out) {
  const Json doc = read_json_file(in);
  std::vector<ReproductionRecord> records;
  if (doc.is_array()) {
    for (const auto& j : doc) records.push_back(record_from_json(j));
  } else {
    records.push_back(record_from_json(doc));
  }
  const std::string text = format == "csv" ? records_to_csv(records) : records_to_json_text(records);
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(out, text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  configure_threads_from_env();
  CLI::App app{"Ordinal metric matching: mechanisms, distortion oracles and thin matchings"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance family");
  gen_cmd->add_option("--family", gen.family, "tree, line, boston or euclid")->required()
      ->check(CLI::IsMember({"tree", "line", "boston", "euclid"}));
  gen_cmd->add_option("--k", gen.k, "Tree depth / Boston size parameter");
  gen_cmd->add_option("--n", gen.n, "Number of agents (line, euclid)");
  gen_cmd->add_option("--dim", gen.dim, "Dimension (euclid)");
  gen_cmd->add_option("--seed", gen.seed, "Seed (euclid)");
  gen_cmd->add_option("--eps", gen.eps, "Far-item offset as num/den (line, boston)");
  gen_cmd->add_option("--pi", gen.pi, "Agent order, comma separated (line)");
  gen_cmd->add_option("--sigma", gen.sigma, "Item order, comma separated (line)");
  gen_cmd->add_option("--out", gen.out, "Instance output path (default stdout)");
  gen_cmd->add_option("--metric-out", gen.metric_out, "Metric output path");

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a mechanism on an instance");
  run_cmd->add_option("--mech", run.mech, "sd, rsd, trsd, repmatch, da, boston or derand-rsd")
      ->required()
      ->check(CLI::IsMember({"sd", "rsd", "trsd", "repmatch", "da", "boston", "derand-rsd"}));
  run_cmd->add_option("--inst", run.inst, "Instance JSON")->required();
  run_cmd->add_option("--order", run.order, "Agent order / priority, comma separated");
  run_cmd->add_option("--item-prefs", run.item_prefs, "JSON file {\"item_prefs\": [[...]]} (da)");
  run_cmd->add_option("--m", run.m, "Number of agents to match (trsd)");
  run_cmd->add_option("--seed", run.seed, "Seed (required for rsd and trsd)");
  run_cmd->add_option("--out", run.out, "Matching output path (default stdout)");

  DistortionArgs dist;
  auto* dist_cmd = app.add_subcommand("distortion", "Worst-case or known-metric distortion");
  dist_cmd->add_option("--inst", dist.inst, "Instance JSON")->required();
  dist_cmd->add_option("--match", dist.match, "Matching JSON");
  dist_cmd->add_option("--fractional", dist.fractional, "Fractional matching JSON");
  dist_cmd->add_option("--metric", dist.metric, "Evaluate under this metric instead");
  dist_cmd->add_flag("--strict", dist.strict, "Also maximize a strict preference margin");
  dist_cmd->add_flag("--full-lp", dist.full_lp, "Use the all-pairs triangle formulation");
  dist_cmd->add_option("--out", dist.out, "Report output path (default stdout)");

  std::string thin_p, thin_match, thin_out;
  auto* thin_cmd = app.add_subcommand("thin", "Thinness of a matching against a fractional one");
  thin_cmd->add_option("--p", thin_p, "Fractional matching JSON")->required();
  thin_cmd->add_option("--match", thin_match, "Matching JSON")->required();
  thin_cmd->add_option("--out", thin_out, "Report output path (default stdout)");

  std::string search_p, search_beta, search_out;
  auto* search_cmd = app.add_subcommand("thin-search", "First matching with thinness <= beta");
  search_cmd->add_option("--p", search_p, "Fractional matching JSON")->required();
  search_cmd->add_option("--beta", search_beta, "Threshold as num/den")->required();
  search_cmd->add_option("--out", search_out, "Output path (default stdout)");

  int cx_k = 1, cx_copies = 1;
  std::string cx_q, cx_out;
  auto* cx_cmd = app.add_subcommand("counterexample", "Alternating-weight cycle family");
  cx_cmd->add_option("--k", cx_k, "Cycle length is 4k")->required();
  cx_cmd->add_option("--q", cx_q, "Weight as num/den in (0, 1)")->required();
  cx_cmd->add_option("--copies", cx_copies, "Number of disjoint cycles");
  cx_cmd->add_option("--out", cx_out, "Output path (default stdout)");

  ReproduceArgs rep;
  auto* rep_cmd = app.add_subcommand("reproduce", "Run a bound-checking experiment");
  std::vector<std::string> rep_choices = experiment_ids();
  rep_choices.push_back("all");
  rep_cmd->add_option("id", rep.id, "Experiment id or all")->required()->check(CLI::IsMember(rep_choices));
  rep_cmd->add_option("--config", rep.config, "Parameter file (see config/reproduce.json)");
  rep_cmd->add_option("--param", rep.params, "Override key=value (repeatable)");
  rep_cmd->add_option("--n", rep.n, "Shorthand for --param n=N");
  rep_cmd->add_option("--k", rep.k, "Shorthand for --param k=K");
  rep_cmd->add_option("--seed", rep.seed, "Shorthand for --param seed=S");
  rep_cmd->add_option("--out", rep.out, "Records JSON output path (default stdout)");
  rep_cmd->add_option("--csv", rep.csv, "Also write records as CSV");

  std::string ex_in, ex_format = "json", ex_out;
  auto* ex_cmd = app.add_subcommand("export", "Convert a records file to JSON or CSV");
  ex_cmd->add_option("--in", ex_in, "Records JSON")->required();
  ex_cmd->add_option("--format", ex_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  ex_cmd->add_option("--out", ex_out, "Output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) return cmd_gen(gen);
    if (*run_cmd) return cmd_run(run);
    if (*dist_cmd) return cmd_distortion(dist);
    if (*thin_cmd) return cmd_thin(thin_p, thin_match, thin_out);
    if (*search_cmd) return cmd_thin_search(search_p, search_beta, search_out);
    if (*cx_cmd) return cmd_counterexample(cx_k, cx_q, cx_copies, cx_out);
    if (*rep_cmd) return cmd_reproduce(rep);
    if (*ex_cmd) return cmd_export(ex_in, ex_format, ex_out);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "ordmatch: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

#include "ordmatch/distortion.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ordmatch/assignment.h"
#include "ordmatch/permutation.h"
#include "ordmatch/random.h"

namespace ordmatch {

std::pair<Matching, Rational> min_cost_matching(const Metric& d) {
  const int n = d.n();
  std::vector<std::vector<Rational>> c(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) c[i][j] = d.agent_item(i, j);
  }
  Assignment a = solve_assignment(c);
  return {Matching(std::move(a.row_to_col)), std::move(a.value)};
}

namespace {

// d(a, b) <= d(a, b2) + d(a2, b2) + d(a2, b)
struct CycleRow {
  int a, b, a2, b2;
};

class BipartiteAdversary {
 public:
  BipartiteAdversary(const Instance& inst, const std::vector<std::vector<Rational>>& weights,
                     const std::vector<int>& candidate)
      : inst_(inst), n_(inst.n()), weights_(weights), candidate_(candidate) {}

  int var(int agent, int item) const { return agent * n_ + item; }

  // Maximizes the weighted cost, or (strict) the margin at a fixed value.
  LpResult solve(const Rational* fixed_value) {
    while (true) {
      const LinearProgram lp = build(fixed_value);
      LpResult r = lp_solve(lp);
      ++solved_;
      if (r.status == LpStatus::kInfeasible) {
        throw std::logic_error("adversary LP infeasible; uniform distances always satisfy it");
      }
      const auto& point = r.status == LpStatus::kOptimal ? r.x : r.ray;
      if (!separate(point)) return r;
    }
  }

  std::int64_t solved() const { return solved_; }

 private:
  LinearProgram build(const Rational* fixed_value) const {
    const int nn = n_ * n_;
    const bool strict = fixed_value != nullptr;
    LinearProgram lp(strict ? nn + 1 : nn);
    const int margin = nn;
    if (strict) {
      lp.set_objective(margin, 1);
      lp.add_constraint({{margin, 1}}, Sense::kLe, 1);
    }
    std::vector<LinearTerm> objective;
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        if (weights_[i][j].is_zero()) continue;
        if (strict) {
          objective.push_back({var(i, j), weights_[i][j]});
        } else {
          lp.set_objective(var(i, j), weights_[i][j]);
        }
      }
    }
    if (strict) lp.add_constraint(std::move(objective), Sense::kEq, *fixed_value);

    std::vector<LinearTerm> norm;
    for (int i = 0; i < n_; ++i) norm.push_back({var(i, candidate_[i]), 1});
    lp.add_constraint(std::move(norm), Sense::kEq, 1);

    for (int i = 0; i < n_; ++i) {
      const auto list = inst_.list(i);
      for (int k = 0; k + 1 < n_; ++k) {
        std::vector<LinearTerm> row{{var(i, list[k]), 1}, {var(i, list[k + 1]), -1}};
        if (strict) row.push_back({margin, 1});
        lp.add_constraint(std::move(row), Sense::kLe, 0);
      }
    }
    for (const auto& c : cycles_) {
      lp.add_constraint({{var(c.a, c.b), 1}, {var(c.a, c.b2), -1}, {var(c.a2, c.b2), -1},
                         {var(c.a2, c.b), -1}},
                        Sense::kLe, 0);
    }
    return lp;
  }

  // Adds the most violated 4-cycle row for every agent-item pair.
  bool separate(const std::vector<Rational>& x) {
    bool added = false;
    for (int a = 0; a < n_; ++a) {
      for (int b = 0; b < n_; ++b) {
        std::optional<Rational> worst;
        CycleRow row{};
        for (int a2 = 0; a2 < n_; ++a2) {
          if (a2 == a) continue;
          for (int b2 = 0; b2 < n_; ++b2) {
            if (b2 == b) continue;
            Rational slack = x[var(a, b)] - x[var(a, b2)] - x[var(a2, b2)] - x[var(a2, b)];
            if (slack.sign() > 0 && (!worst || slack > *worst)) {
              worst = std::move(slack);
              row = {a, b, a2, b2};
            }
          }
        }
        if (worst) {
          cycles_.push_back(row);
          added = true;
        }
      }
    }
    return added;
  }

  const Instance& inst_;
  int n_;
  const std::vector<std::vector<Rational>>& weights_;
  const std::vector<int>& candidate_;
  std::vector<CycleRow> cycles_;
  std::int64_t solved_ = 0;
};

CandidateValue full_metric_value(const Instance& inst,
                                 const std::vector<std::vector<Rational>>& weights,
                                 const std::vector<int>& candidate) {
  const int n = inst.n();
  const int pts = 2 * n;
  std::vector<int> index(pts * pts, -1);
  int vars = 0;
  for (int x = 0; x < pts; ++x) {
    for (int y = x + 1; y < pts; ++y) index[x * pts + y] = index[y * pts + x] = vars++;
  }
  auto pair_var = [&](int x, int y) { return index[x * pts + y]; };
  auto ai = [&](int i, int j) { return pair_var(i, n + j); };

  LinearProgram lp(vars);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!weights[i][j].is_zero()) lp.set_objective(ai(i, j), weights[i][j]);
    }
  }
  std::vector<LinearTerm> norm;
  for (int i = 0; i < n; ++i) norm.push_back({ai(i, candidate[i]), 1});
  lp.add_constraint(std::move(norm), Sense::kEq, 1);
  for (int i = 0; i < n; ++i) {
    const auto list = inst.list(i);
    for (int k = 0; k + 1 < n; ++k) {
      lp.add_constraint({{ai(i, list[k]), 1}, {ai(i, list[k + 1]), -1}}, Sense::kLe, 0);
    }
  }
  for (int x = 0; x < pts; ++x) {
    for (int z = x + 1; z < pts; ++z) {
      for (int y = 0; y < pts; ++y) {
        if (y == x || y == z) continue;
        lp.add_constraint({{pair_var(x, z), 1}, {pair_var(x, y), -1}, {pair_var(y, z), -1}},
                          Sense::kLe, 0);
      }
    }
  }
  const LpResult r = lp_solve(lp);
  if (r.status == LpStatus::kInfeasible) {
    throw std::logic_error("full-metric adversary LP infeasible");
  }
  const auto& point = r.status == LpStatus::kOptimal ? r.x : r.ray;
  CandidateValue out;
  out.value = r.status == LpStatus::kOptimal ? ExtRational(r.value) : ExtRational::infinity();
  out.distances.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out.distances[i * n + j] = point[ai(i, j)];
  }
  out.lps_solved = 1;
  return out;
}

Metric closure(int n, const std::vector<Rational>& distances) {
  WeightedGraph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g.add_agent_item_edge(i, j, distances[i * n + j]);
  }
  Metric d = metric_from_graph(g);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (d.agent_item(i, j) != distances[i * n + j]) {
        throw std::logic_error("adversary distances are not a shortest-path metric");
      }
    }
  }
  return d;
}

Rational weighted_cost(const std::vector<std::vector<Rational>>& w, const Metric& d) {
  Rational total;
  for (int i = 0; i < d.n(); ++i) {
    for (int j = 0; j < d.n(); ++j) {
      if (!w[i][j].is_zero()) total += w[i][j] * d.agent_item(i, j);
    }
  }
  return total;
}

DistortionReport evaluate(const Instance& inst, const std::vector<std::vector<Rational>>& weights,
                          const DistortionOptions& options, bool parallel) {
  const int n = inst.n();
  if (n > options.cap || n > 20) {
    throw CapExceeded("adversarial distortion enumerates n! candidate optima; n = " +
                      std::to_string(n) + " exceeds the cap of " + std::to_string(options.cap) +
                      "; evaluate under a known metric instead");
  }
  const std::int64_t total = static_cast<std::int64_t>(factorial(n));
  std::vector<CandidateValue> values(total);
  auto work = [&](std::int64_t r) {
    const std::vector<int> cand = unrank_permutation(n, static_cast<std::uint64_t>(r));
    values[r] = candidate_value(inst, weights, cand, options.formulation);
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t r = 0; r < total; ++r) work(r);
  } else {
    for (std::int64_t r = 0; r < total; ++r) work(r);
  }

  std::int64_t best = 0;
  DistortionReport report;
  for (std::int64_t r = 0; r < total; ++r) {
    report.lps_solved += values[r].lps_solved;
    if (values[r].value > values[best].value) best = r;
  }
  const std::vector<int> cand = unrank_permutation(n, static_cast<std::uint64_t>(best));
  report.value = values[best].value;
  report.witness_opt = Matching(cand);
  std::vector<Rational> distances = std::move(values[best].distances);

  if (options.strict && report.value.finite()) {
    BipartiteAdversary adversary(inst, weights, cand);
    const LpResult r = adversary.solve(&report.value.value());
    report.lps_solved += adversary.solved();
    report.strict_margin = r.value;
    distances.assign(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(n) * n);
  }

  report.witness_metric = closure(n, distances);
  report.mechanism_cost = weighted_cost(weights, report.witness_metric);
  report.opt_cost = cost(report.witness_opt, report.witness_metric);
  const bool coherent = report.value.finite()
                            ? report.mechanism_cost == report.value.value() * report.opt_cost
                            : report.opt_cost.is_zero() && report.mechanism_cost.sign() > 0;
  if (!coherent) throw std::logic_error("distortion witness does not reproduce the value");
  return report;
}

std::vector<std::vector<Rational>> indicator_weights(const Instance& inst, const Matching& m) {
  if (m.n() != inst.n() || !m.perfect()) {
    throw InvalidInput("adversarial distortion needs a perfect matching on the instance's agents");
  }
  return FractionalMatching::indicator(m).rows();
}

const std::vector<std::vector<Rational>>& fractional_weights(const Instance& inst,
                                                             const FractionalMatching& p) {
  if (p.n() != inst.n() || !p.doubly_stochastic()) {
    throw InvalidInput("adversarial distortion needs a doubly stochastic matrix of size n");
  }
  return p.rows();
}

}  // namespace

CandidateValue candidate_value(const Instance& inst, const std::vector<std::vector<Rational>>& weights,
                               const std::vector<int>& candidate, Formulation formulation) {
  if (formulation == Formulation::kFullMetric) return full_metric_value(inst, weights, candidate);
  BipartiteAdversary adversary(inst, weights, candidate);
  LpResult r = adversary.solve(nullptr);
  CandidateValue out;
  if (r.status == LpStatus::kOptimal) {
    out.value = r.value;
    out.distances = std::move(r.x);
  } else {
    out.value = ExtRational::infinity();
    out.distances = std::move(r.ray);
  }
  out.lps_solved = adversary.solved();
  return out;
}

DistortionReport adversarial_distortion(const Instance& inst, const Matching& m,
                                        const DistortionOptions& options) {
  return evaluate(inst, indicator_weights(inst, m), options, true);
}

DistortionReport adversarial_distortion_serial(const Instance& inst, const Matching& m,
                                               const DistortionOptions& options) {
  return evaluate(inst, indicator_weights(inst, m), options, false);
}

DistortionReport adversarial_distortion_fractional(const Instance& inst,
                                                   const FractionalMatching& p,
                                                   const DistortionOptions& options) {
  return evaluate(inst, fractional_weights(inst, p), options, true);
}

DistortionReport adversarial_distortion_fractional_serial(const Instance& inst,
                                                          const FractionalMatching& p,
                                                          const DistortionOptions& options) {
  return evaluate(inst, fractional_weights(inst, p), options, false);
}

ExpectedDistortion expected_distortion_known_metric(const MechanismSpec& spec, const Instance& inst,
                                                    const Metric& d, EvalMode mode, int trials) {
  const int n = inst.n();
  if (d.n() != n) throw InvalidInput("instance and metric sizes differ");
  if (!consistent(inst, d)) throw InvalidInput("metric is inconsistent with the instance");
  ExpectedDistortion out;
  out.opt_cost = min_cost_matching(d).second;
  const int m = spec.kind == MechanismKind::kTruncatedRsd && spec.m >= 0 ? spec.m : n;

  if (!spec.randomized()) {
    out.expected_cost = cost(run_mechanism(spec, inst), d);
    out.samples = 1;
  } else if (mode == EvalMode::kExact) {
    out.expected_cost = fractional_cost(exact_rsd_marginals(inst, m, kExactEvaluationCap), d);
    out.samples = static_cast<std::int64_t>(factorial(n));
  } else {
    if (trials < 1) throw InvalidInput("Monte Carlo evaluation needs at least one trial");
    Rational sum;
    double sum_sq = 0;
    for (int t = 0; t < trials; ++t) {
      MechanismSpec draw = spec;
      draw.seed = mix_seed(spec.seed, static_cast<std::uint64_t>(t));
      const Rational c = cost(run_mechanism(draw, inst), d);
      const double cd = c.to_double();
      sum += c;
      sum_sq += cd * cd;
    }
    out.expected_cost = sum / Rational(trials);
    out.samples = trials;
    const double mean = out.expected_cost.to_double();
    const double var = trials > 1 ? std::max(0.0, (sum_sq - trials * mean * mean) / (trials - 1)) : 0;
    const double opt = out.opt_cost.to_double();
    out.half_width = opt > 0 ? 1.96 * std::sqrt(var / trials) / opt : 0;
  }
  out.ratio = out.opt_cost.is_zero() && out.expected_cost.is_zero()
                  ? ExtRational(Rational(1))
                  : ExtRational::ratio(out.expected_cost, out.opt_cost);
  return out;
}

}  // namespace ordmatch

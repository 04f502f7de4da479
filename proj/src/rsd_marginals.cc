// Exact and sampled TruncatedRSD marginals.

#include <algorithm>
#include <numeric>
#include <string>

#include "ordmatch/mechanisms.h"
#include "ordmatch/permutation.h"
#include "ordmatch/random.h"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ordmatch {
namespace {

using Counts = std::vector<std::int64_t>;  // n x n, row-major

// Runs SD on `order` for the first m agents and adds one to each matched
// (agent, item) cell. `taken` is scratch space of size n.
void tally(const Instance& inst, const std::vector<int>& order, int m, std::vector<char>& taken,
           Counts& counts) {
  const int n = inst.n();
  std::fill(taken.begin(), taken.end(), 0);
  for (int step = 0; step < m; ++step) {
    const int agent = order[step];
    for (int item : inst.list(agent)) {
      if (!taken[item]) {
        taken[item] = 1;
        ++counts[agent * n + item];
        break;
      }
    }
  }
}

FractionalMatching normalize(const Counts& counts, int n, std::int64_t total) {
  std::vector<std::vector<Rational>> p(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) p[i][j] = Rational(counts[i * n + j], total);
  }
  return FractionalMatching(std::move(p));
}

void check_exact_args(const Instance& inst, int m, int cap) {
  if (m < 0 || m > inst.n()) throw InvalidInput("marginals: m must be in [0, n]");
  if (inst.n() > cap) {
    throw CapExceeded("exact marginals enumerate n! orders; n = " + std::to_string(inst.n()) +
                      " exceeds the cap of " + std::to_string(cap) +
                      "; use monte_carlo_marginals instead");
  }
}

void check_mc_args(const Instance& inst, int m, int trials) {
  if (m < 0 || m > inst.n()) throw InvalidInput("marginals: m must be in [0, n]");
  if (trials < 1) throw InvalidInput("marginals: need at least one trial");
}

}  // namespace

FractionalMatching exact_rsd_marginals_serial(const Instance& inst, int m, int cap) {
  check_exact_args(inst, m, cap);
  const int n = inst.n();
  Counts counts(static_cast<std::size_t>(n) * n, 0);
  std::vector<char> taken(n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  do {
    tally(inst, order, m, taken, counts);
  } while (std::next_permutation(order.begin(), order.end()));
  return normalize(counts, n, static_cast<std::int64_t>(factorial(n)));
}

FractionalMatching exact_rsd_marginals(const Instance& inst, int m, int cap) {
  check_exact_args(inst, m, cap);
  const int n = inst.n();
  const std::uint64_t total = factorial(n);
  Counts counts(static_cast<std::size_t>(n) * n, 0);
#pragma omp parallel
  {
    int threads = 1;
    int tid = 0;
#ifdef _OPENMP
    threads = omp_get_num_threads();
    tid = omp_get_thread_num();
#endif
    const std::uint64_t lo = total * tid / threads;
    const std::uint64_t hi = total * (tid + 1) / threads;
    Counts local(counts.size(), 0);
    std::vector<char> taken(n);
    if (lo < hi) {
      std::vector<int> order = unrank_permutation(n, lo);
      for (std::uint64_t r = lo; r < hi; ++r) {
        tally(inst, order, m, taken, local);
        std::next_permutation(order.begin(), order.end());
      }
    }
#pragma omp critical
    for (std::size_t c = 0; c < counts.size(); ++c) counts[c] += local[c];
  }
  return normalize(counts, n, static_cast<std::int64_t>(total));
}

FractionalMatching monte_carlo_marginals_serial(const Instance& inst, int m, int trials,
                                                std::uint64_t seed) {
  check_mc_args(inst, m, trials);
  const int n = inst.n();
  Counts counts(static_cast<std::size_t>(n) * n, 0);
  std::vector<char> taken(n);
  for (int t = 0; t < trials; ++t) {
    Rng rng(seed, static_cast<std::uint64_t>(t));
    tally(inst, rng.permutation(n), m, taken, counts);
  }
  return normalize(counts, n, trials);
}

FractionalMatching monte_carlo_marginals(const Instance& inst, int m, int trials,
                                         std::uint64_t seed) {
  check_mc_args(inst, m, trials);
  const int n = inst.n();
  Counts counts(static_cast<std::size_t>(n) * n, 0);
#pragma omp parallel
  {
    Counts local(counts.size(), 0);
    std::vector<char> taken(n);
#pragma omp for schedule(static)
    for (int t = 0; t < trials; ++t) {
      Rng rng(seed, static_cast<std::uint64_t>(t));
      tally(inst, rng.permutation(n), m, taken, local);
    }
#pragma omp critical
    for (std::size_t c = 0; c < counts.size(); ++c) counts[c] += local[c];
  }
  return normalize(counts, n, trials);
}

}  // namespace ordmatch

// Seeded pseudo-random streams.
//
// Everything here is defined in terms of std::mt19937_64 output words, so a
// given seed produces the same stream on every platform. The standard
// distributions are avoided on purpose: their algorithms are unspecified.

#ifndef ORDMATCH_RANDOM_H_
#define ORDMATCH_RANDOM_H_

#include <cstdint>
#include <random>
#include <vector>

namespace ordmatch {

// SplitMix64 finalizer; used to derive independent sub-stream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Independent sub-stream `stream` of the root seed.
  Rng(std::uint64_t seed, std::uint64_t stream) : engine_(mix_seed(seed, stream)) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  bool coin() { return (engine_() >> 63) != 0; }

  // Uniform random permutation of 0..n-1 (Fisher-Yates).
  std::vector<int> permutation(int n);
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ordmatch

#endif  // ORDMATCH_RANDOM_H_

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace asofs {

// Seeded random stream. Draw functions are written out explicitly (rather than
// through std::*_distribution) so that a given seed yields the same sequence
// with every standard library.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n); n must be positive.
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n));
  }

  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t next() { return engine_(); }

  // Deterministic substream seed derived from a parent seed and a path of
  // tags, e.g. derive_seed(run_seed, {stage, iteration, atom}).
  static std::uint64_t derive_seed(std::uint64_t seed,
                                   std::initializer_list<std::uint64_t> path);

  static Rng derive(std::uint64_t seed,
                    std::initializer_list<std::uint64_t> path) {
    return Rng(derive_seed(seed, path));
  }

private:
  std::mt19937_64 engine_;
};

// Fisher-Yates shuffle driven by Rng.
template <typename Range>
void shuffle(Range& range, Rng& rng) {
  using std::swap;
  const std::size_t n = range.size();
  for (std::size_t i = n; i > 1; --i) {
    swap(range[i - 1], range[rng.index(i)]);
  }
}

} // namespace asofs

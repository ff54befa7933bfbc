#include "asofs/oracle.hpp"

#include <cstdint>
#include <optional>
#include <vector>

#include "asofs/errors.hpp"
#include "asofs/optimizer.hpp"
#include "asofs/parallel.hpp"

namespace asofs {

bool oracle_precedes(const FeatureMask& a_mask, const FitnessValue& a,
                     const FeatureMask& b_mask, const FitnessValue& b) {
  if (a.fitness != b.fitness) return a.fitness < b.fitness;
  if (a.selected_count != b.selected_count) {
    return a.selected_count < b.selected_count;
  }
  return a_mask < b_mask;
}

OracleResult exhaustive_search(const EvaluationContext& ctx, unsigned threads) {
  const std::size_t dims = ctx.feature_count();
  if (dims > kOracleMaxFeatures) {
    throw ConfigError("exhaustive search refuses " + std::to_string(dims) +
                      " features (limit " + std::to_string(kOracleMaxFeatures) +
                      ")");
  }
  if (dims == 0) throw DataError("exhaustive search: dataset has no features");

  const std::uint64_t total = (std::uint64_t{1} << dims) - 1;
  const unsigned workers = std::max(1u, threads);
  std::vector<std::optional<OracleResult>> partial(workers);

  parallel_for(workers, workers, [&](std::size_t w) {
    auto& best = partial[w];
    FeatureMask mask(dims);
    for (std::uint64_t code = 1 + w; code <= total; code += workers) {
      for (std::size_t d = 0; d < dims; ++d) mask.set(d, (code >> d) & 1U);
      const auto value = ctx.evaluate_uncached(mask);
      if (!best || oracle_precedes(mask, value, best->mask, best->value)) {
        best = OracleResult{mask, value, 0};
      }
    }
  });

  OracleResult result;
  bool have = false;
  for (auto& p : partial) {
    if (!p) continue;
    if (!have || oracle_precedes(p->mask, p->value, result.mask, result.value)) {
      result = *p;
      have = true;
    }
  }
  result.masks_evaluated = static_cast<std::size_t>(total);
  return result;
}

OracleResult exhaustive_oracle(const Dataset& dataset,
                               const FitnessWeights& weights, std::size_t knn_k,
                               const SplitSpec& split, unsigned threads) {
  if (dataset.feature_count > kOracleMaxFeatures) {
    throw ConfigError("exhaustive search refuses " +
                      std::to_string(dataset.feature_count) + " features (limit " +
                      std::to_string(kOracleMaxFeatures) + ")");
  }
  auto ctx = make_context(dataset, split, knn_k, weights, false);
  return exhaustive_search(*ctx, threads);
}

} // namespace asofs

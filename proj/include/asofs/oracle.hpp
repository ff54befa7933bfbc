#pragma once

#include <cstddef>

#include "asofs/dataset.hpp"
#include "asofs/evaluator.hpp"
#include "asofs/feature_mask.hpp"

namespace asofs {

inline constexpr std::size_t kOracleMaxFeatures = 20;

struct OracleResult {
  FeatureMask mask;
  FitnessValue value;
  std::size_t masks_evaluated = 0;
};

// True when (a_mask, a) ranks before (b_mask, b): lower fitness, then fewer
// selected features, then the lexicographically smaller bit string.
bool oracle_precedes(const FeatureMask& a_mask, const FitnessValue& a,
                     const FeatureMask& b_mask, const FitnessValue& b);

// Evaluates all 2^d - 1 non-empty masks of the context and returns the
// first under oracle_precedes. Throws ConfigError when d > 20.
OracleResult exhaustive_search(const EvaluationContext& ctx, unsigned threads = 1);

// Splits, normalizes and searches exhaustively with a KNN evaluator.
OracleResult exhaustive_oracle(const Dataset& dataset,
                               const FitnessWeights& weights, std::size_t knn_k,
                               const SplitSpec& split, unsigned threads = 1);

} // namespace asofs

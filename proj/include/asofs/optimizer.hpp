#pragma once

// Binary atom search feature selection, optionally followed each iteration by
// a simulated-annealing walk on every atom.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "asofs/annealing.hpp"
#include "asofs/binarizer.hpp"
#include "asofs/dataset.hpp"
#include "asofs/dynamics.hpp"
#include "asofs/evaluator.hpp"
#include "asofs/feature_mask.hpp"

namespace asofs {

struct OptimizerConfig {
  std::size_t population_size = 20;
  TransferKind transfer = TransferKind::SShaped;
  bool sa_enabled = false;
  DynamicsParams dynamics;  // dynamics.max_iterations is the iteration budget
  FitnessWeights weights;
  FlipPolicy flip;

  double stop_temp = 1.0;
  double cooling_factor = 0.93;
  AcceptanceReference sa_reference = AcceptanceReference::WalkBest;
  double sa_fraction = 1.0;  // share of atoms (best first) that anneal

  std::size_t knn_k = 5;
  SplitSpec split;
  std::uint64_t seed = 0;

  // Worker threads inside one run. Results do not depend on it.
  unsigned threads = 1;

  int iterations() const noexcept { return dynamics.max_iterations; }

  // "ASOs", "ASOv", "ASOs-SA" or "ASOv-SA".
  std::string method() const;

  // Sets transfer and sa_enabled from asos | asov | asos-sa | asov-sa
  // (case-insensitive, labels as returned by method() also accepted).
  void set_method(std::string_view name);

  // Throws ConfigError listing the first violated invariant.
  void validate() const;
};

struct RunReport {
  std::string dataset;
  std::string method;
  FeatureMask best_mask;
  std::size_t selected_count = 0;
  std::size_t feature_count = 0;
  double test_accuracy = 0.0;
  double best_fitness = 0.0;
  std::vector<double> convergence;  // best fitness after each iteration
  double wall_time_seconds = 0.0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  std::string classifier;
  OptimizerConfig config;
};

// Split and normalized partitions wrapped in an evaluation context.
std::unique_ptr<EvaluationContext> make_context(const Dataset& dataset,
                                                const SplitSpec& split,
                                                std::size_t knn_k,
                                                const FitnessWeights& weights,
                                                bool use_cache = true);

// Splits with config.split, normalizes, and searches.
RunReport run(const OptimizerConfig& config, const Dataset& dataset);

// Searches on a prepared context. The context's weights take precedence.
RunReport run(const OptimizerConfig& config, EvaluationContext& ctx);

// Recomputes the test accuracy of report.best_mask from the source dataset
// using the split, classifier and weights recorded in the report.
double recompute_accuracy(const RunReport& report, const Dataset& dataset);

} // namespace asofs

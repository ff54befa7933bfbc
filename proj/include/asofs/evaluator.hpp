#pragma once

#include <atomic>
#include <cstddef>
#include <future>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>

#include "asofs/dataset.hpp"
#include "asofs/feature_mask.hpp"
#include "asofs/random.hpp"

namespace asofs {

struct FitnessWeights {
  double omega = 0.99;  // weight of the classification error

  void validate() const;
};

struct FitnessValue {
  double fitness = 0.0;
  double error_rate = 0.0;
  std::size_t selected_count = 0;

  friend bool operator==(const FitnessValue&, const FitnessValue&) = default;
};

// omega * error + (1 - omega) * selected / total. Lower is better.
// Throws std::invalid_argument for an empty selection.
double fitness(double error, std::size_t selected, std::size_t total,
               const FitnessWeights& weights);

// Wrapper classifier: trains on one partition and reports the misclassified
// fraction on another, using only the given feature columns.
class Classifier {
public:
  virtual ~Classifier() = default;
  virtual double error(const Dataset& train, const Dataset& eval,
                       std::span<const std::size_t> features) const = 0;
  virtual std::string describe() const = 0;
  // Smallest training partition the classifier accepts.
  virtual std::size_t min_train_size() const { return 1; }
};

// k-nearest neighbours under Euclidean distance. Equal distances prefer the
// lower training index; tied votes go to the smallest class id.
class KnnClassifier final : public Classifier {
public:
  explicit KnnClassifier(std::size_t k = 5);

  int predict(const Dataset& train, std::span<const double> query,
              std::span<const std::size_t> features) const;
  double error(const Dataset& train, const Dataset& eval,
               std::span<const std::size_t> features) const override;
  std::string describe() const override;
  std::size_t min_train_size() const override { return k_; }
  std::size_t k() const noexcept { return k_; }

private:
  std::size_t k_;
};

// Misclassified fraction of `eval` under KNN restricted to `mask`.
// Throws std::invalid_argument for an empty mask.
double knn_error(const Dataset& train, const Dataset& eval,
                 const FeatureMask& mask, std::size_t k);

struct Evaluation {
  FeatureMask mask;  // the evaluated mask, after any empty-mask repair
  FitnessValue value;
};

// Train/evaluation partitions plus classifier, weights and a fitness cache.
// evaluate() may be called concurrently; each distinct mask reaches the
// classifier at most once.
class EvaluationContext {
public:
  EvaluationContext(Dataset train, Dataset eval,
                    std::shared_ptr<const Classifier> classifier,
                    FitnessWeights weights, bool use_cache = true);

  EvaluationContext(const EvaluationContext&) = delete;
  EvaluationContext& operator=(const EvaluationContext&) = delete;

  // Requires a non-empty mask of length feature_count().
  FitnessValue evaluate(const FeatureMask& mask);

  // As above, but an empty mask is first repaired by setting one bit chosen
  // with rng.
  Evaluation evaluate(FeatureMask mask, Rng& rng);

  // Bypasses the cache.
  FitnessValue evaluate_uncached(const FeatureMask& mask) const;

  const Dataset& train() const noexcept { return train_; }
  const Dataset& eval() const noexcept { return eval_; }
  const Classifier& classifier() const noexcept { return *classifier_; }
  const FitnessWeights& weights() const noexcept { return weights_; }
  std::size_t feature_count() const noexcept { return train_.feature_count; }

  std::size_t classifier_calls() const noexcept { return calls_.load(); }
  std::size_t cache_size() const;

private:
  Dataset train_;
  Dataset eval_;
  std::shared_ptr<const Classifier> classifier_;
  FitnessWeights weights_;
  bool use_cache_;

  mutable std::atomic<std::size_t> calls_{0};
  mutable std::mutex mutex_;
  std::unordered_map<FeatureMask, std::shared_future<FitnessValue>> cache_;
};

// Sets one uniformly chosen bit when the mask is empty.
void repair_empty(FeatureMask& mask, Rng& rng);

} // namespace asofs

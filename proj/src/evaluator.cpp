#include "asofs/evaluator.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "asofs/errors.hpp"

namespace asofs {

void FitnessWeights::validate() const {
  if (!(omega >= 0.0 && omega <= 1.0)) {
    throw ConfigError("omega must lie in [0, 1]");
  }
}

double fitness(double error, std::size_t selected, std::size_t total,
               const FitnessWeights& weights) {
  if (selected == 0) throw std::invalid_argument("fitness: empty feature subset");
  if (selected > total) throw std::invalid_argument("fitness: selected > total");
  return weights.omega * error +
         (1.0 - weights.omega) * static_cast<double>(selected) /
             static_cast<double>(total);
}

KnnClassifier::KnnClassifier(std::size_t k) : k_(k) {
  if (k_ == 0) throw ConfigError("knn: k must be positive");
}

int KnnClassifier::predict(const Dataset& train, std::span<const double> query,
                           std::span<const std::size_t> features) const {
  const std::size_t n = train.instance_count();
  if (k_ > n) throw ConfigError("knn: k exceeds the training partition size");

  std::vector<std::pair<double, std::size_t>> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = train.row(i);
    double sum = 0.0;
    for (auto d : features) {
      const double diff = row[d] - query[d];
      sum += diff * diff;
    }
    dist[i] = {sum, i};
  }
  // Pair ordering breaks distance ties by training index.
  std::partial_sort(dist.begin(), dist.begin() + static_cast<long>(k_),
                    dist.end());

  std::vector<std::size_t> votes(train.class_count(), 0);
  for (std::size_t v = 0; v < k_; ++v) {
    ++votes[static_cast<std::size_t>(train.labels[dist[v].second])];
  }
  // max_element returns the first maximum, i.e. the smallest class id.
  return static_cast<int>(std::max_element(votes.begin(), votes.end()) -
                          votes.begin());
}

double KnnClassifier::error(const Dataset& train, const Dataset& eval,
                            std::span<const std::size_t> features) const {
  if (eval.instance_count() == 0) return 0.0;
  std::size_t wrong = 0;
  for (std::size_t q = 0; q < eval.instance_count(); ++q) {
    if (predict(train, eval.row(q), features) != eval.labels[q]) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(eval.instance_count());
}

std::string KnnClassifier::describe() const {
  return "knn(k=" + std::to_string(k_) + ")";
}

double knn_error(const Dataset& train, const Dataset& eval,
                 const FeatureMask& mask, std::size_t k) {
  if (mask.none()) throw std::invalid_argument("knn_error: empty feature mask");
  return KnnClassifier(k).error(train, eval, mask.indices());
}

void repair_empty(FeatureMask& mask, Rng& rng) {
  if (mask.size() > 0 && mask.none()) mask.set(rng.index(mask.size()));
}

EvaluationContext::EvaluationContext(Dataset train, Dataset eval,
                                     std::shared_ptr<const Classifier> classifier,
                                     FitnessWeights weights, bool use_cache)
    : train_(std::move(train)),
      eval_(std::move(eval)),
      classifier_(std::move(classifier)),
      weights_(weights),
      use_cache_(use_cache) {
  weights_.validate();
  if (!classifier_) throw std::invalid_argument("evaluation context: no classifier");
  if (train_.feature_count != eval_.feature_count) {
    throw DataError("evaluation context: partitions have different widths");
  }
  if (train_.instance_count() < classifier_->min_train_size()) {
    throw ConfigError("evaluation context: training partition has " +
                      std::to_string(train_.instance_count()) +
                      " instances, fewer than " + classifier_->describe() +
                      " needs");
  }
}

FitnessValue EvaluationContext::evaluate_uncached(const FeatureMask& mask) const {
  if (mask.size() != feature_count()) {
    throw std::invalid_argument("evaluate: mask length does not match dataset");
  }
  if (mask.none()) throw std::invalid_argument("evaluate: empty feature mask");
  ++calls_;
  const auto features = mask.indices();
  FitnessValue value;
  value.error_rate = classifier_->error(train_, eval_, features);
  value.selected_count = features.size();
  value.fitness =
      fitness(value.error_rate, value.selected_count, feature_count(), weights_);
  return value;
}

FitnessValue EvaluationContext::evaluate(const FeatureMask& mask) {
  if (!use_cache_) return evaluate_uncached(mask);

  std::promise<FitnessValue> promise;
  std::shared_future<FitnessValue> result;
  bool owner = false;
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(mask);
    if (it != cache_.end()) {
      result = it->second;
    } else {
      result = promise.get_future().share();
      cache_.emplace(mask, result);
      owner = true;
    }
  }
  if (owner) {
    try {
      promise.set_value(evaluate_uncached(mask));
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
  }
  return result.get();
}

Evaluation EvaluationContext::evaluate(FeatureMask mask, Rng& rng) {
  repair_empty(mask, rng);
  auto value = evaluate(mask);
  return {std::move(mask), value};
}

std::size_t EvaluationContext::cache_size() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

} // namespace asofs

#include "asofs/optimizer.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <numeric>

#include "asofs/errors.hpp"
#include "asofs/parallel.hpp"

namespace asofs {

namespace {

// Substream tags. Every random draw in a run comes from
// Rng::derive(seed, {tag, iteration, atom}).
enum StreamTag : std::uint64_t {
  kInitStream = 1,
  kRepairStream = 2,
  kMotionStream = 3,
  kAnnealStream = 4,
};

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void initialize(Population& pop, std::size_t n, std::size_t dims,
                std::uint64_t seed) {
  pop.atoms.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto rng = Rng::derive(seed, {kInitStream, 0, i});
    Atom& atom = pop.atoms[i];
    atom.position = FeatureMask(dims);
    atom.velocity.resize(dims);
    for (std::size_t d = 0; d < dims; ++d) {
      atom.position.set(d, rng.bernoulli(0.5));
      atom.velocity[d] = rng.uniform(-1.0, 1.0);
    }
  }
}

} // namespace

std::string OptimizerConfig::method() const {
  std::string label = transfer == TransferKind::SShaped ? "ASOs" : "ASOv";
  if (sa_enabled) label += "-SA";
  return label;
}

void OptimizerConfig::set_method(std::string_view name) {
  const auto m = lower(name);
  if (m == "asos") {
    transfer = TransferKind::SShaped;
    sa_enabled = false;
  } else if (m == "asov") {
    transfer = TransferKind::VShaped;
    sa_enabled = false;
  } else if (m == "asos-sa") {
    transfer = TransferKind::SShaped;
    sa_enabled = true;
  } else if (m == "asov-sa") {
    transfer = TransferKind::VShaped;
    sa_enabled = true;
  } else {
    throw ConfigError("unknown method '" + std::string(name) +
                      "' (expected asos, asov, asos-sa or asov-sa)");
  }
}

void OptimizerConfig::validate() const {
  if (population_size < 2) throw ConfigError("population size must be >= 2");
  dynamics.validate();
  weights.validate();
  flip.validate();
  if (!(cooling_factor > 0.0 && cooling_factor < 1.0)) {
    throw ConfigError("cooling factor must lie strictly between 0 and 1");
  }
  if (!(stop_temp > 0.0)) throw ConfigError("stop temperature must be positive");
  if (!(sa_fraction > 0.0 && sa_fraction <= 1.0)) {
    throw ConfigError("SA fraction must lie in (0, 1]");
  }
  if (knn_k == 0) throw ConfigError("k must be positive");
  split.validate();
}

std::unique_ptr<EvaluationContext> make_context(const Dataset& dataset,
                                                const SplitSpec& split_spec,
                                                std::size_t knn_k,
                                                const FitnessWeights& weights,
                                                bool use_cache) {
  auto parts = split(dataset, split_spec);
  auto [train, test] = normalize(parts.train, parts.test);
  return std::make_unique<EvaluationContext>(
      std::move(train), std::move(test),
      std::make_shared<KnnClassifier>(knn_k), weights, use_cache);
}

RunReport run(const OptimizerConfig& config, const Dataset& dataset) {
  config.validate();
  auto ctx = make_context(dataset, config.split, config.knn_k, config.weights);
  auto report = run(config, *ctx);
  report.dataset = dataset.name;
  return report;
}

RunReport run(const OptimizerConfig& config, EvaluationContext& ctx) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();

  const std::size_t n = config.population_size;
  const std::size_t dims = ctx.feature_count();
  const int T = config.iterations();
  const auto& params = config.dynamics;
  const auto schedule = [&] {
    auto s = AnnealSchedule::for_features(dims, config.stop_temp,
                                          config.cooling_factor);
    s.reference = config.sa_reference;
    return s;
  }();

  Population pop;
  initialize(pop, n, dims, config.seed);
  std::vector<double> fitness(n);
  std::vector<double> convergence;
  convergence.reserve(static_cast<std::size_t>(T));

  for (int t = 1; t <= T; ++t) {
    pop.iteration = t;
    const auto tu = static_cast<std::uint64_t>(t);

    parallel_for(n, config.threads, [&](std::size_t i) {
      auto rng = Rng::derive(config.seed, {kRepairStream, tu, i});
      auto result = ctx.evaluate(pop.atoms[i].position, rng);
      pop.atoms[i].position = std::move(result.mask);
      pop.atoms[i].fitness = result.value.fitness;
      fitness[i] = result.value.fitness;
    });
    for (const auto& atom : pop.atoms) pop.offer_best(atom.position, atom.fitness);

    const auto masses = compute_masses(fitness);
    for (std::size_t i = 0; i < n; ++i) pop.atoms[i].mass = masses[i];
    const auto kbest = select_kbest(fitness, neighbor_count(t, T, n));

    // Motion reads the whole population, so new states are staged first.
    std::vector<Atom> moved(n);
    parallel_for(n, config.threads, [&](std::size_t i) {
      auto rng = Rng::derive(config.seed, {kMotionStream, tu, i});
      const auto accel = acceleration(i, pop, kbest, t, params, rng);
      Atom next = pop.atoms[i];
      next.velocity =
          update_velocity(next.velocity, accel, params.velocity_cap, rng);
      next.position = apply_flip(next.position, next.velocity, config.transfer,
                                 config.flip, rng);
      moved[i] = std::move(next);
    });
    pop.atoms = std::move(moved);

    if (config.sa_enabled) {
      std::vector<Rng> streams;
      streams.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        streams.push_back(Rng::derive(config.seed, {kAnnealStream, tu, i}));
      }
      std::vector<FitnessValue> values(n);
      parallel_for(n, config.threads, [&](std::size_t i) {
        auto result = ctx.evaluate(pop.atoms[i].position, streams[i]);
        pop.atoms[i].position = std::move(result.mask);
        values[i] = result.value;
      });

      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
        return values[a].fitness < values[b].fitness;
      });
      const auto annealed = static_cast<std::size_t>(
          std::ceil(config.sa_fraction * static_cast<double>(n)));
      order.resize(std::min(annealed, n));

      parallel_for(order.size(), config.threads, [&](std::size_t slot) {
        const std::size_t i = order[slot];
        auto outcome =
            anneal(pop.atoms[i].position, values[i], ctx, schedule, streams[i]);
        pop.atoms[i].position = std::move(outcome.mask);
        values[i] = outcome.value;
      });
      for (std::size_t i = 0; i < n; ++i) {
        pop.atoms[i].fitness = values[i].fitness;
        pop.offer_best(pop.atoms[i].position, values[i].fitness);
      }
    }
    convergence.push_back(pop.best_fitness);
  }

  const auto best = ctx.evaluate(pop.best_position);
  RunReport report;
  report.dataset = ctx.train().name;
  report.method = config.method();
  report.best_mask = pop.best_position;
  report.selected_count = best.selected_count;
  report.feature_count = dims;
  report.test_accuracy = 1.0 - best.error_rate;
  report.best_fitness = best.fitness;
  report.convergence = std::move(convergence);
  report.train_size = ctx.train().instance_count();
  report.test_size = ctx.eval().instance_count();
  report.classifier = ctx.classifier().describe();
  report.config = config;
  report.config.weights = ctx.weights();
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return report;
}

double recompute_accuracy(const RunReport& report, const Dataset& dataset) {
  auto ctx = make_context(dataset, report.config.split, report.config.knn_k,
                          report.config.weights, false);
  return 1.0 - ctx->evaluate_uncached(report.best_mask).error_rate;
}

} // namespace asofs

#include "asofs/annealing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "asofs/errors.hpp"

namespace asofs {

AnnealSchedule AnnealSchedule::for_features(std::size_t feature_count,
                                            double stop_temp,
                                            double cooling_factor) {
  AnnealSchedule s;
  s.initial_temp = 2.0 * static_cast<double>(feature_count);
  s.stop_temp = stop_temp;
  s.cooling_factor = cooling_factor;
  return s;
}

void AnnealSchedule::validate() const {
  if (!(cooling_factor > 0.0 && cooling_factor < 1.0)) {
    throw ConfigError("cooling factor must lie strictly between 0 and 1");
  }
  if (!(stop_temp > 0.0)) throw ConfigError("stop temperature must be positive");
  if (!(initial_temp > 0.0)) {
    throw ConfigError("initial temperature must be positive");
  }
}

std::size_t AnnealSchedule::step_count() const {
  if (initial_temp <= stop_temp) return 0;
  return static_cast<std::size_t>(std::ceil(
      std::log(initial_temp / stop_temp) / std::log(1.0 / cooling_factor)));
}

double boltzmann_p(double cur_fitness, double best_fitness, double temp) {
  if (!(temp > 0.0)) throw std::invalid_argument("boltzmann_p: temp must be > 0");
  return std::min(1.0, std::exp(-(cur_fitness - best_fitness) / temp));
}

bool accept_neighbor(double cur_fitness, double reference_fitness, double temp,
                     Rng& rng) {
  if (cur_fitness <= reference_fitness) return true;
  return rng.uniform() < boltzmann_p(cur_fitness, reference_fitness, temp);
}

FeatureMask perturb(const FeatureMask& mask, Rng& rng) {
  if (mask.empty()) throw std::invalid_argument("perturb: empty mask");
  const double rate = 1.0 / static_cast<double>(mask.size());
  FeatureMask out = mask;
  bool changed = false;
  for (std::size_t d = 0; d < mask.size(); ++d) {
    if (rng.bernoulli(rate)) {
      out.flip(d);
      changed = true;
    }
  }
  if (!changed) out.flip(rng.index(mask.size()));
  return out;
}

AnnealOutcome anneal(const FeatureMask& start, const FitnessValue& start_value,
                     EvaluationContext& ctx, const AnnealSchedule& schedule,
                     Rng& rng) {
  schedule.validate();
  AnnealOutcome best{start, start_value, 0, 0};
  FeatureMask current = start;
  double current_fitness = start_value.fitness;

  for (double temp = schedule.initial_temp; temp > schedule.stop_temp;
       temp *= schedule.cooling_factor) {
    auto neighbor = ctx.evaluate(perturb(current, rng), rng);
    ++best.neighbors_evaluated;

    const double cur = neighbor.value.fitness;
    const double reference =
        schedule.reference == AcceptanceReference::WalkBest ? best.value.fitness
                                                            : current_fitness;
    if (accept_neighbor(cur, reference, temp, rng)) {
      if (cur > reference) ++best.accepted_worse;
      current = neighbor.mask;
      current_fitness = cur;
    }
    if (cur < best.value.fitness) {
      best.mask = std::move(neighbor.mask);
      best.value = neighbor.value;
    }
  }
  return best;
}

} // namespace asofs

#pragma once

#include <cstddef>

#include "asofs/evaluator.hpp"
#include "asofs/feature_mask.hpp"
#include "asofs/random.hpp"

namespace asofs {

// Which fitness a worse neighbour is measured against. WalkBest compares with
// the best fitness seen so far during the walk; Current is the textbook
// variant that compares with the walk's current solution.
enum class AcceptanceReference { WalkBest, Current };

struct AnnealSchedule {
  double initial_temp = 2.0;
  double cooling_factor = 0.93;
  double stop_temp = 1.0;
  AcceptanceReference reference = AcceptanceReference::WalkBest;

  // Initial temperature 2 * feature_count.
  static AnnealSchedule for_features(std::size_t feature_count,
                                     double stop_temp = 1.0,
                                     double cooling_factor = 0.93);

  void validate() const;

  // Number of cooling steps (one neighbour each) before temp <= stop_temp:
  // ceil(ln(initial/stop) / ln(1/cooling)), or 0 when initial <= stop.
  std::size_t step_count() const;
};

struct AnnealOutcome {
  FeatureMask mask;
  FitnessValue value;
  std::size_t neighbors_evaluated = 0;
  std::size_t accepted_worse = 0;
};

// min(1, exp(-(cur - best) / temp)).
double boltzmann_p(double cur_fitness, double best_fitness, double temp);

// Accepts outright when cur <= reference, otherwise with probability
// boltzmann_p (one uniform draw).
bool accept_neighbor(double cur_fitness, double reference_fitness, double temp,
                     Rng& rng);

// Flips each bit with probability 1/size; if none flipped, flips one
// uniformly chosen bit. The result always differs from the input.
FeatureMask perturb(const FeatureMask& mask, Rng& rng);

// Single-solution annealing walk from an evaluated mask. Returns the best
// mask seen, which is never worse than the start.
AnnealOutcome anneal(const FeatureMask& start, const FitnessValue& start_value,
                     EvaluationContext& ctx, const AnnealSchedule& schedule,
                     Rng& rng);

} // namespace asofs

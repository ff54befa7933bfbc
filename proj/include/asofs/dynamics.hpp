#pragma once

// Atom search dynamics over binary positions: interaction and constraint
// forces, masses, acceleration and velocity. Positions are feature masks whose
// bits are read as 0.0/1.0 coordinates; velocities and forces are real.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "asofs/feature_mask.hpp"
#include "asofs/random.hpp"

namespace asofs {

struct DynamicsParams {
  double alpha = 50.0;  // depth weight
  double beta = 0.2;    // multiplier weight
  double u = 1.24;      // upper bound of the scaled distance
  double g0 = 1.1;      // base of the lower bound of the scaled distance
  int max_iterations = 30;
  double velocity_cap = 6.0;

  // Throws ConfigError when an invariant does not hold, including the case
  // where the lower distance bound would reach the upper one at the last
  // iteration (g0 + 0.1 >= u).
  void validate() const;
};

struct Atom {
  FeatureMask position;
  std::vector<double> velocity;
  double fitness = std::numeric_limits<double>::quiet_NaN();
  double mass = 0.0;
};

struct Population {
  std::vector<Atom> atoms;
  FeatureMask best_position;
  double best_fitness = std::numeric_limits<double>::infinity();
  int iteration = 1;

  std::size_t size() const noexcept { return atoms.size(); }

  // Adopts `position` as the global best if `fitness` is strictly lower.
  bool offer_best(const FeatureMask& position, double fitness);
};

struct DistanceBounds {
  double lower;
  double upper;
};

// Time-decaying depth of the interaction force, for 1 <= t <= T.
double depth(int t, const DynamicsParams& params);

// Drift of the lower distance bound: 0.1 sin(pi/2 * t/T), in (0, 0.1].
double drift(int t, int max_iterations);

// Lower bound g0 + drift(t), upper bound u.
DistanceBounds distance_bounds(int t, const DynamicsParams& params);

// Lagrangian multiplier of the constraint force: beta * exp(-20 t / T).
double multiplier(int t, const DynamicsParams& params);

// Euclidean distance between a mask and the centroid of the K-best masks.
double length_scale(const FeatureMask& position,
                    std::span<const double> kbest_centroid);

// r / sigma clamped into the bounds. sigma == 0 yields the lower bound.
double scaled_distance(double r, double sigma, DistanceBounds bounds);

// Signed magnitude -depth * (2 h^13 - h^7). Zero at h = 2^(-1/6), negative
// above it.
double interaction_magnitude(double h, double depth);

// Normalized masses from fitness values (lower fitness -> heavier atom).
// All-equal fitness gives uniform masses. Output sums to 1.
std::vector<double> compute_masses(std::span<const double> fitness);

// Size of the K-best neighbourhood: round-half-up of N - (N-2) sqrt(t/T),
// clamped to [2, N].
std::size_t neighbor_count(int t, int max_iterations, std::size_t population);

// Indices of the k lowest fitness values; equal fitness is ordered by index.
std::vector<std::size_t> select_kbest(std::span<const double> fitness,
                                      std::size_t k);

// Componentwise mean of the K-best positions.
std::vector<double> kbest_centroid(const Population& population,
                                   std::span<const std::size_t> kbest);

// Weighted sum of pair forces exerted on atom i by the K-best atoms. One
// uniform weight is drawn per K-best member j != i, in kbest order, whether
// or not the pair contributes. Coincident masks contribute nothing.
std::vector<double> interaction_force(std::size_t i,
                                      const Population& population,
                                      std::span<const std::size_t> kbest,
                                      int t, const DynamicsParams& params,
                                      Rng& rng);

// Same with explicit pair weights: weights[n] applies to kbest[n]; the entry
// for i itself is ignored.
std::vector<double> interaction_force(std::size_t i,
                                      const Population& population,
                                      std::span<const std::size_t> kbest,
                                      int t, const DynamicsParams& params,
                                      std::span<const double> weights);

// Attraction toward the global best: multiplier(t) * (best - position).
std::vector<double> constraint_force(const FeatureMask& position,
                                     const FeatureMask& best, int t,
                                     const DynamicsParams& params);

// (interaction + constraint) / mass of atom i. Masses must be current.
std::vector<double> acceleration(std::size_t i, const Population& population,
                                 std::span<const std::size_t> kbest, int t,
                                 const DynamicsParams& params, Rng& rng);

// v' = r_d * v + a per dimension with r_d ~ U[0,1), clamped to [-cap, cap].
std::vector<double> update_velocity(std::span<const double> velocity,
                                    std::span<const double> accel, double cap,
                                    Rng& rng);

std::vector<double> update_velocity(std::span<const double> velocity,
                                    std::span<const double> accel, double cap,
                                    std::span<const double> draws);

} // namespace asofs

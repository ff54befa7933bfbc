#include "asofs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "asofs/errors.hpp"

namespace asofs {

void DynamicsParams::validate() const {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (!(beta >= 0.0)) throw ConfigError("beta must be non-negative");
  if (!(g0 > 0.0)) throw ConfigError("g0 must be positive");
  if (!(u > g0)) throw ConfigError("u must exceed g0");
  if (!(g0 + 0.1 < u)) {
    throw ConfigError("distance bounds cross: g0 + 0.1 (" +
                      std::to_string(g0 + 0.1) + ") must be below u (" +
                      std::to_string(u) + ")");
  }
  if (max_iterations < 1) throw ConfigError("iterations must be >= 1");
  if (!(velocity_cap > 0.0)) throw ConfigError("velocity cap must be positive");
}

bool Population::offer_best(const FeatureMask& position, double fitness) {
  if (fitness < best_fitness) {
    best_fitness = fitness;
    best_position = position;
    return true;
  }
  return false;
}

double depth(int t, const DynamicsParams& params) {
  const double T = params.max_iterations;
  const double remaining = 1.0 - (t - 1) / T;
  return params.alpha * remaining * remaining * remaining *
         std::exp(-20.0 * t / T);
}

double drift(int t, int max_iterations) {
  return 0.1 * std::sin(std::numbers::pi / 2.0 *
                        (static_cast<double>(t) / max_iterations));
}

DistanceBounds distance_bounds(int t, const DynamicsParams& params) {
  return {params.g0 + drift(t, params.max_iterations), params.u};
}

double multiplier(int t, const DynamicsParams& params) {
  return params.beta * std::exp(-20.0 * t / params.max_iterations);
}

double length_scale(const FeatureMask& position,
                    std::span<const double> kbest_centroid) {
  if (position.size() != kbest_centroid.size()) {
    throw std::invalid_argument("length_scale: dimension mismatch");
  }
  double sum = 0.0;
  for (std::size_t d = 0; d < position.size(); ++d) {
    const double diff = (position.test(d) ? 1.0 : 0.0) - kbest_centroid[d];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

double scaled_distance(double r, double sigma, DistanceBounds bounds) {
  if (sigma == 0.0) return bounds.lower;
  return std::clamp(r / sigma, bounds.lower, bounds.upper);
}

double interaction_magnitude(double h, double depth) {
  const double h7 = std::pow(h, 7);
  return -depth * h7 * (2.0 * std::pow(h, 6) - 1.0);
}

std::vector<double> compute_masses(std::span<const double> fitness) {
  if (fitness.empty()) return {};
  const auto [lo, hi] = std::minmax_element(fitness.begin(), fitness.end());
  const double best = *lo;
  const double spread = *hi - best;

  std::vector<double> masses(fitness.size(), 1.0);
  if (spread > 0.0) {
    for (std::size_t i = 0; i < fitness.size(); ++i) {
      masses[i] = std::exp(-(fitness[i] - best) / spread);
    }
  }
  const double total = std::accumulate(masses.begin(), masses.end(), 0.0);
  for (auto& m : masses) m /= total;
  return masses;
}

std::size_t neighbor_count(int t, int max_iterations, std::size_t population) {
  const double n = static_cast<double>(population);
  const double k =
      n - (n - 2.0) * std::sqrt(static_cast<double>(t) / max_iterations);
  const auto rounded = static_cast<long long>(std::floor(k + 0.5));
  return static_cast<std::size_t>(
      std::clamp<long long>(rounded, 2, static_cast<long long>(population)));
}

std::vector<std::size_t> select_kbest(std::span<const double> fitness,
                                      std::size_t k) {
  std::vector<std::size_t> order(fitness.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  k = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(k),
                    order.end(), [&](std::size_t a, std::size_t b) {
                      if (fitness[a] != fitness[b]) return fitness[a] < fitness[b];
                      return a < b;
                    });
  order.resize(k);
  return order;
}

std::vector<double> kbest_centroid(const Population& population,
                                   std::span<const std::size_t> kbest) {
  const std::size_t dims = population.atoms.front().position.size();
  std::vector<double> centroid(dims, 0.0);
  for (auto j : kbest) {
    const auto& pos = population.atoms[j].position;
    for (std::size_t d = 0; d < dims; ++d) {
      if (pos.test(d)) centroid[d] += 1.0;
    }
  }
  for (auto& c : centroid) c /= static_cast<double>(kbest.size());
  return centroid;
}

std::vector<double> interaction_force(std::size_t i,
                                      const Population& population,
                                      std::span<const std::size_t> kbest,
                                      int t, const DynamicsParams& params,
                                      std::span<const double> weights) {
  if (weights.size() != kbest.size()) {
    throw std::invalid_argument("interaction_force: one weight per K-best atom");
  }
  const auto& xi = population.atoms[i].position;
  const std::size_t dims = xi.size();
  std::vector<double> force(dims, 0.0);
  if (kbest.empty()) return force;

  const auto centroid = kbest_centroid(population, kbest);
  const double sigma = length_scale(xi, centroid);
  const auto bounds = distance_bounds(t, params);
  const double eta = depth(t, params);

  for (std::size_t n = 0; n < kbest.size(); ++n) {
    const std::size_t j = kbest[n];
    if (j == i) continue;
    const auto& xj = population.atoms[j].position;
    const double r = std::sqrt(static_cast<double>(xi.hamming_distance(xj)));
    if (r == 0.0) continue;
    const double h = scaled_distance(r, sigma, bounds);
    const double scale = weights[n] * interaction_magnitude(h, eta) / r;
    for (std::size_t d = 0; d < dims; ++d) {
      const double diff = (xj.test(d) ? 1.0 : 0.0) - (xi.test(d) ? 1.0 : 0.0);
      force[d] += scale * diff;
    }
  }
  return force;
}

std::vector<double> interaction_force(std::size_t i,
                                      const Population& population,
                                      std::span<const std::size_t> kbest,
                                      int t, const DynamicsParams& params,
                                      Rng& rng) {
  std::vector<double> weights(kbest.size(), 0.0);
  for (std::size_t n = 0; n < kbest.size(); ++n) {
    if (kbest[n] != i) weights[n] = rng.uniform();
  }
  return interaction_force(i, population, kbest, t, params, weights);
}

std::vector<double> constraint_force(const FeatureMask& position,
                                     const FeatureMask& best, int t,
                                     const DynamicsParams& params) {
  const double lambda = multiplier(t, params);
  std::vector<double> force(position.size());
  for (std::size_t d = 0; d < position.size(); ++d) {
    force[d] =
        lambda * ((best.test(d) ? 1.0 : 0.0) - (position.test(d) ? 1.0 : 0.0));
  }
  return force;
}

std::vector<double> acceleration(std::size_t i, const Population& population,
                                 std::span<const std::size_t> kbest, int t,
                                 const DynamicsParams& params, Rng& rng) {
  const auto& atom = population.atoms[i];
  if (!(atom.mass > 0.0)) {
    throw std::logic_error("acceleration: atom mass is not positive");
  }
  auto accel = interaction_force(i, population, kbest, t, params, rng);
  const auto pull =
      constraint_force(atom.position, population.best_position, t, params);
  for (std::size_t d = 0; d < accel.size(); ++d) {
    accel[d] = (accel[d] + pull[d]) / atom.mass;
  }
  return accel;
}

std::vector<double> update_velocity(std::span<const double> velocity,
                                    std::span<const double> accel, double cap,
                                    std::span<const double> draws) {
  if (velocity.size() != accel.size() || velocity.size() != draws.size()) {
    throw std::invalid_argument("update_velocity: dimension mismatch");
  }
  std::vector<double> out(velocity.size());
  for (std::size_t d = 0; d < velocity.size(); ++d) {
    out[d] = std::clamp(draws[d] * velocity[d] + accel[d], -cap, cap);
  }
  return out;
}

std::vector<double> update_velocity(std::span<const double> velocity,
                                    std::span<const double> accel, double cap,
                                    Rng& rng) {
  std::vector<double> draws(velocity.size());
  for (auto& r : draws) r = rng.uniform();
  return update_velocity(velocity, accel, cap, draws);
}

} // namespace asofs

#pragma once

#include <span>
#include <string_view>

#include "asofs/feature_mask.hpp"
#include "asofs/random.hpp"

namespace asofs {

enum class TransferKind { SShaped, VShaped };

enum class ThresholdMode { Fixed, Sampled };

// How the flip threshold is obtained for each bit. Fixed mode compares every
// transfer value against `fixed_value`; sampled mode draws U[0,1) per bit.
struct FlipPolicy {
  ThresholdMode mode = ThresholdMode::Fixed;
  double fixed_value = 0.5;

  void validate() const;
};

// S: 1 / (1 + e^-v), V: |tanh v|.
double transfer(TransferKind kind, double v);

// Negates bit d when threshold < transfer(kind, velocity[d]); equality keeps
// the bit. In fixed mode rng is not consumed.
FeatureMask apply_flip(const FeatureMask& mask, std::span<const double> velocity,
                       TransferKind kind, const FlipPolicy& policy, Rng& rng);

std::string_view to_string(TransferKind kind);
std::string_view to_string(ThresholdMode mode);

} // namespace asofs

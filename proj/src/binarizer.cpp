#include "asofs/binarizer.hpp"

#include <cmath>
#include <stdexcept>

#include "asofs/errors.hpp"

namespace asofs {

void FlipPolicy::validate() const {
  if (mode == ThresholdMode::Fixed && !(fixed_value >= 0.0 && fixed_value <= 1.0)) {
    throw ConfigError("fixed flip threshold must lie in [0, 1]");
  }
}

double transfer(TransferKind kind, double v) {
  switch (kind) {
    case TransferKind::SShaped:
      return 1.0 / (1.0 + std::exp(-v));
    case TransferKind::VShaped:
      return std::abs(std::tanh(v));
  }
  throw std::invalid_argument("unknown transfer kind");
}

FeatureMask apply_flip(const FeatureMask& mask, std::span<const double> velocity,
                       TransferKind kind, const FlipPolicy& policy, Rng& rng) {
  if (mask.size() != velocity.size()) {
    throw std::invalid_argument("apply_flip: mask and velocity lengths differ");
  }
  FeatureMask out = mask;
  for (std::size_t d = 0; d < mask.size(); ++d) {
    const double threshold =
        policy.mode == ThresholdMode::Fixed ? policy.fixed_value : rng.uniform();
    if (threshold < transfer(kind, velocity[d])) out.flip(d);
  }
  return out;
}

std::string_view to_string(TransferKind kind) {
  return kind == TransferKind::SShaped ? "s-shaped" : "v-shaped";
}

std::string_view to_string(ThresholdMode mode) {
  return mode == ThresholdMode::Fixed ? "fixed" : "sampled";
}

} // namespace asofs

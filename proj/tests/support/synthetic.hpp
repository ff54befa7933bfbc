#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "asofs/dataset.hpp"
#include "asofs/random.hpp"

namespace asofs::testing {

// `informative` leading features decide the class jointly (parity of their
// halves); the remaining features are uniform noise. Two classes.
inline Dataset parity_dataset(std::size_t instances, std::size_t informative,
                              std::size_t noise, std::uint64_t seed) {
  Rng rng(seed);
  Dataset ds;
  ds.name = "parity";
  ds.feature_count = informative + noise;
  ds.class_names = {"0", "1"};
  for (std::size_t i = 0; i < instances; ++i) {
    unsigned parity = 0;
    for (std::size_t d = 0; d < ds.feature_count; ++d) {
      const double v = rng.uniform();
      if (d < informative) parity ^= v > 0.5 ? 1U : 0U;
      ds.features.push_back(v);
    }
    ds.labels.push_back(static_cast<int>(parity));
  }
  return ds;
}

// Class c instances sit near (c, c, ...) in every feature; well separated.
inline Dataset blobs(std::size_t per_class, std::size_t classes,
                     std::size_t features, std::uint64_t seed) {
  Rng rng(seed);
  Dataset ds;
  ds.name = "blobs";
  ds.feature_count = features;
  for (std::size_t c = 0; c < classes; ++c) ds.class_names.push_back(std::to_string(c));
  for (std::size_t c = 0; c < classes; ++c) {
    for (std::size_t i = 0; i < per_class; ++i) {
      for (std::size_t d = 0; d < features; ++d) {
        ds.features.push_back(static_cast<double>(c) + rng.uniform(-0.2, 0.2));
      }
      ds.labels.push_back(static_cast<int>(c));
    }
  }
  return ds;
}

} // namespace asofs::testing

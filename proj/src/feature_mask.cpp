#include "asofs/feature_mask.hpp"

#include <algorithm>
#include <stdexcept>

namespace asofs {

FeatureMask FeatureMask::from_string(std::string_view bits) {
  FeatureMask mask(bits.size());
  for (std::size_t d = 0; d < bits.size(); ++d) {
    if (bits[d] == '1') {
      mask.set(d);
    } else if (bits[d] != '0') {
      throw std::invalid_argument("feature mask: unexpected character '" +
                                  std::string(1, bits[d]) + "'");
    }
  }
  return mask;
}

std::size_t FeatureMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::vector<std::size_t> FeatureMask::indices() const {
  std::vector<std::size_t> out;
  out.reserve(bits_.size());
  for (std::size_t d = 0; d < bits_.size(); ++d) {
    if (bits_[d]) out.push_back(d);
  }
  return out;
}

std::vector<double> FeatureMask::as_reals() const {
  return {bits_.begin(), bits_.end()};
}

std::string FeatureMask::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t d = 0; d < bits_.size(); ++d) {
    if (bits_[d]) s[d] = '1';
  }
  return s;
}

std::size_t FeatureMask::hamming_distance(const FeatureMask& other) const {
  if (other.size() != size()) {
    throw std::invalid_argument("feature mask: length mismatch");
  }
  std::size_t n = 0;
  for (std::size_t d = 0; d < bits_.size(); ++d) {
    n += bits_[d] != other.bits_[d];
  }
  return n;
}

std::size_t FeatureMask::hash() const noexcept {
  // FNV-1a over the bit bytes.
  std::uint64_t h = 1469598103934665603ULL;
  for (auto b : bits_) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  h ^= bits_.size();
  return static_cast<std::size_t>(h);
}

} // namespace asofs

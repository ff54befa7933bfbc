#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace asofs {

// A selection of features: bit d set means feature d is kept.
class FeatureMask {
public:
  FeatureMask() = default;
  explicit FeatureMask(std::size_t size, bool value = false)
      : bits_(size, value ? 1 : 0) {}

  // Parses a string of '0'/'1' characters, feature 0 first.
  static FeatureMask from_string(std::string_view bits);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }

  bool test(std::size_t d) const { return bits_[d] != 0; }
  void set(std::size_t d, bool value = true) { bits_[d] = value ? 1 : 0; }
  void flip(std::size_t d) { bits_[d] ^= 1; }

  std::size_t count() const noexcept;
  bool none() const noexcept { return count() == 0; }

  // Indices of the selected features, ascending.
  std::vector<std::size_t> indices() const;

  // Bits as 0.0 / 1.0, the real-valued position used by the force model.
  std::vector<double> as_reals() const;

  std::string to_string() const;

  std::size_t hamming_distance(const FeatureMask& other) const;

  // Lexicographic over the bit string (feature 0 most significant).
  friend auto operator<=>(const FeatureMask&, const FeatureMask&) = default;
  friend bool operator==(const FeatureMask&, const FeatureMask&) = default;

  std::size_t hash() const noexcept;

private:
  std::vector<std::uint8_t> bits_;
};

} // namespace asofs

template <>
struct std::hash<asofs::FeatureMask> {
  std::size_t operator()(const asofs::FeatureMask& m) const noexcept {
    return m.hash();
  }
};

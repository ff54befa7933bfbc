#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace asofs {

// Row-major numeric feature matrix with integer class ids.
struct Dataset {
  std::string name;
  std::size_t feature_count = 0;
  std::vector<double> features;  // instance_count() * feature_count
  std::vector<int> labels;
  std::vector<std::string> feature_names;  // empty when the file had no header
  std::vector<std::string> class_names;    // indexed by class id

  std::size_t instance_count() const noexcept { return labels.size(); }
  std::size_t class_count() const noexcept { return class_names.size(); }

  std::span<const double> row(std::size_t i) const {
    return {features.data() + i * feature_count, feature_count};
  }
  double at(std::size_t i, std::size_t d) const {
    return features[i * feature_count + d];
  }

  // Copy restricted to the given instances, in the given order.
  Dataset subset(std::span<const std::size_t> rows) const;

  // Throws DataError if the shape or values are inconsistent.
  void validate() const;
};

// Reads a comma-separated file. `label_column` is a header name or a
// zero-based column index; empty selects the last column. The first row is a
// header when any of its feature cells is non-numeric. Class ids follow the
// order in which labels first appear.
Dataset load_csv(const std::filesystem::path& path,
                 std::string_view label_column = {});
Dataset parse_csv(std::istream& in, std::string_view label_column = {},
                  std::string name = {});

struct SplitSpec {
  double train_fraction = 0.8;
  bool stratified = true;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Split {
  Dataset train;
  Dataset test;
  std::vector<std::size_t> train_rows;  // indices into the source, ascending
  std::vector<std::size_t> test_rows;
};

// Seeded train/test partition. Stratified: per class, floor(f * count)
// (at least 1) instances go to train and the rest to test.
Split split(const Dataset& dataset, const SplitSpec& spec);

// Min-max scaling fitted on train and applied to both partitions. Constant
// train features become 0; test values are not clipped.
std::pair<Dataset, Dataset> normalize(const Dataset& train, const Dataset& test);

} // namespace asofs

#pragma once

// Flat key-value option files. Keys are the long CLI flag names without the
// leading dashes; one `key = value` per line, `#` starts a comment.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "asofs/optimizer.hpp"

namespace asofs {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

KeyValues parse_key_values(std::istream& in);
KeyValues load_key_values(const std::filesystem::path& path);

// Options of a single `run`.
struct RunSettings {
  OptimizerConfig config;
  std::optional<std::uint64_t> split_seed;  // defaults to the run seed
  std::string data;
  std::string label_col;
  std::string out;
  bool timing = false;

  // Applies one option. Returns false when the key is not a run option;
  // throws ConfigError for a malformed value.
  bool apply(std::string_view key, std::string_view value);

  // Resolves derived values (split seed) and validates the configuration.
  OptimizerConfig resolved() const;
};

std::vector<std::string> split_list(std::string_view value);

// Parses "1,2,5" or an inclusive range "1..10".
std::vector<std::uint64_t> parse_seed_list(std::string_view value);

} // namespace asofs

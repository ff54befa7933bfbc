#include "asofs/settings.hpp"

#include <charconv>
#include <fstream>
#include <istream>

#include "asofs/errors.hpp"

namespace asofs {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1);
}

template <typename T>
T parse_as(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError("invalid value '" + std::string(value) + "' for " +
                      std::string(key));
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError("invalid boolean '" + std::string(value) + "' for " +
                    std::string(key));
}

} // namespace

KeyValues parse_key_values(std::istream& in) {
  KeyValues out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto text = std::string_view(line);
    if (const auto hash = text.find('#'); hash != std::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    auto key = trim(text.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.remove_prefix(1);
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    }
    out.emplace_back(std::string(key), std::string(trim(text.substr(eq + 1))));
  }
  return out;
}

KeyValues load_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_key_values(in);
}

bool RunSettings::apply(std::string_view key, std::string_view value) {
  auto& c = config;
  if (key == "method") {
    c.set_method(value);
  } else if (key == "seed") {
    c.seed = parse_as<std::uint64_t>(key, value);
  } else if (key == "split-seed") {
    split_seed = parse_as<std::uint64_t>(key, value);
  } else if (key == "pop") {
    c.population_size = parse_as<std::size_t>(key, value);
  } else if (key == "iters") {
    c.dynamics.max_iterations = parse_as<int>(key, value);
  } else if (key == "omega") {
    c.weights.omega = parse_as<double>(key, value);
  } else if (key == "k") {
    c.knn_k = parse_as<std::size_t>(key, value);
  } else if (key == "alpha") {
    c.dynamics.alpha = parse_as<double>(key, value);
  } else if (key == "beta") {
    c.dynamics.beta = parse_as<double>(key, value);
  } else if (key == "u") {
    c.dynamics.u = parse_as<double>(key, value);
  } else if (key == "g0") {
    c.dynamics.g0 = parse_as<double>(key, value);
  } else if (key == "v-cap") {
    c.dynamics.velocity_cap = parse_as<double>(key, value);
  } else if (key == "stop-temp") {
    c.stop_temp = parse_as<double>(key, value);
  } else if (key == "cooling") {
    c.cooling_factor = parse_as<double>(key, value);
  } else if (key == "sa-reference") {
    if (value == "best") {
      c.sa_reference = AcceptanceReference::WalkBest;
    } else if (value == "current") {
      c.sa_reference = AcceptanceReference::Current;
    } else {
      throw ConfigError("sa-reference must be 'best' or 'current'");
    }
  } else if (key == "sa-fraction") {
    c.sa_fraction = parse_as<double>(key, value);
  } else if (key == "flip-mode") {
    if (value == "fixed") {
      c.flip.mode = ThresholdMode::Fixed;
    } else if (value == "sampled") {
      c.flip.mode = ThresholdMode::Sampled;
    } else {
      throw ConfigError("flip-mode must be 'fixed' or 'sampled'");
    }
  } else if (key == "flip-threshold") {
    c.flip.fixed_value = parse_as<double>(key, value);
  } else if (key == "train-fraction") {
    c.split.train_fraction = parse_as<double>(key, value);
  } else if (key == "stratified") {
    c.split.stratified = parse_bool(key, value);
  } else if (key == "threads") {
    c.threads = parse_as<unsigned>(key, value);
  } else if (key == "data") {
    data = value;
  } else if (key == "label-col") {
    label_col = value;
  } else if (key == "out") {
    out = value;
  } else if (key == "timing") {
    timing = parse_bool(key, value);
  } else {
    return false;
  }
  return true;
}

OptimizerConfig RunSettings::resolved() const {
  OptimizerConfig c = config;
  c.split.seed = split_seed.value_or(c.seed);
  c.validate();
  return c;
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const auto item = trim(value.substr(start, comma - start));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view value) {
  std::vector<std::uint64_t> seeds;
  if (const auto dots = value.find(".."); dots != std::string_view::npos) {
    const auto lo = parse_as<std::uint64_t>("seeds", trim(value.substr(0, dots)));
    const auto hi = parse_as<std::uint64_t>("seeds", trim(value.substr(dots + 2)));
    if (hi < lo) throw ConfigError("seeds: empty range");
    for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  for (const auto& item : split_list(value)) {
    seeds.push_back(parse_as<std::uint64_t>("seeds", item));
  }
  return seeds;
}

} // namespace asofs

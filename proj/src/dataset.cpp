#include "asofs/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>

#include "asofs/errors.hpp"
#include "asofs/random.hpp"

namespace asofs {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.emplace_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::optional<double> parse_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::optional<std::size_t> parse_index(std::string_view s) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return value;
}

struct Row {
  std::size_t line;
  std::vector<std::string> fields;
};

} // namespace

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  Dataset out;
  out.name = name;
  out.feature_count = feature_count;
  out.feature_names = feature_names;
  out.class_names = class_names;
  out.features.reserve(rows.size() * feature_count);
  out.labels.reserve(rows.size());
  for (auto i : rows) {
    const auto r = row(i);
    out.features.insert(out.features.end(), r.begin(), r.end());
    out.labels.push_back(labels[i]);
  }
  return out;
}

void Dataset::validate() const {
  if (feature_count == 0) throw DataError(name + ": no feature columns");
  if (features.size() != labels.size() * feature_count) {
    throw DataError(name + ": feature matrix does not match label count");
  }
  for (double v : features) {
    if (!std::isfinite(v)) throw DataError(name + ": non-finite feature value");
  }
  for (int c : labels) {
    if (c < 0 || static_cast<std::size_t>(c) >= class_names.size()) {
      throw DataError(name + ": label id out of range");
    }
  }
}

Dataset parse_csv(std::istream& in, std::string_view label_column,
                  std::string name) {
  std::vector<Row> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    rows.push_back({line_no, split_fields(line)});
  }
  if (rows.empty()) throw DataError(name + ": empty file");

  const std::size_t columns = rows.front().fields.size();
  if (columns < 2) {
    throw DataError(name + ": need at least one feature column and a label");
  }
  for (const auto& r : rows) {
    if (r.fields.size() != columns) {
      throw DataError(name + ": row " + std::to_string(r.line) + " has " +
                      std::to_string(r.fields.size()) + " columns, expected " +
                      std::to_string(columns));
    }
  }

  // Resolve the label column; a name match in the first row marks a header.
  const auto& first = rows.front().fields;
  std::size_t label = columns - 1;
  bool header = false;
  if (!label_column.empty()) {
    const auto named = std::find(first.begin(), first.end(), label_column);
    if (named != first.end()) {
      label = static_cast<std::size_t>(named - first.begin());
      header = true;
    } else if (auto index = parse_index(label_column)) {
      if (*index >= columns) {
        throw ConfigError(name + ": label column index " +
                          std::string(label_column) + " out of range (" +
                          std::to_string(columns) + " columns)");
      }
      label = *index;
    } else {
      throw ConfigError(name + ": no column named '" +
                        std::string(label_column) + "'");
    }
  }
  for (std::size_t c = 0; c < columns && !header; ++c) {
    if (c != label && !parse_number(first[c])) header = true;
  }

  Dataset ds;
  ds.name = std::move(name);
  ds.feature_count = columns - 1;
  if (header) {
    for (std::size_t c = 0; c < columns; ++c) {
      if (c != label) ds.feature_names.push_back(first[c]);
    }
  }

  std::map<std::string, int> class_ids;
  const std::size_t body = header ? 1 : 0;
  if (rows.size() == body) throw DataError(ds.name + ": no data rows");
  ds.features.reserve((rows.size() - body) * ds.feature_count);
  for (std::size_t r = body; r < rows.size(); ++r) {
    const auto& fields = rows[r].fields;
    for (std::size_t c = 0; c < columns; ++c) {
      if (c == label) continue;
      const auto value = parse_number(fields[c]);
      if (!value || !std::isfinite(*value)) {
        throw DataError(ds.name + ": row " + std::to_string(rows[r].line) +
                        ", column " + std::to_string(c + 1) +
                        ": non-numeric feature value '" + fields[c] + "'");
      }
      ds.features.push_back(*value);
    }
    const auto& cls = fields[label];
    if (cls.empty()) {
      throw DataError(ds.name + ": row " + std::to_string(rows[r].line) +
                      ": missing label");
    }
    auto [it, inserted] =
        class_ids.try_emplace(cls, static_cast<int>(ds.class_names.size()));
    if (inserted) ds.class_names.push_back(cls);
    ds.labels.push_back(it->second);
  }
  ds.validate();
  return ds;
}

Dataset load_csv(const std::filesystem::path& path,
                 std::string_view label_column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return parse_csv(in, label_column, path.stem().string());
}

void SplitSpec::validate() const {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("train fraction must lie strictly between 0 and 1");
  }
}

Split split(const Dataset& dataset, const SplitSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const std::size_t n = dataset.instance_count();

  std::vector<std::vector<std::size_t>> groups;
  if (spec.stratified) {
    groups.resize(dataset.class_count());
    for (std::size_t i = 0; i < n; ++i) {
      groups[static_cast<std::size_t>(dataset.labels[i])].push_back(i);
    }
    for (std::size_t c = 0; c < groups.size(); ++c) {
      if (groups[c].size() < 2) {
        throw DataError(dataset.name + ": class '" + dataset.class_names[c] +
                        "' has fewer than 2 instances; cannot stratify");
      }
    }
  } else {
    if (n < 2) throw DataError(dataset.name + ": need at least 2 instances");
    groups.emplace_back(n);
    for (std::size_t i = 0; i < n; ++i) groups[0][i] = i;
  }

  Split out;
  for (auto& group : groups) {
    shuffle(group, rng);
    auto take = static_cast<std::size_t>(
        std::floor(spec.train_fraction * static_cast<double>(group.size())));
    take = std::clamp<std::size_t>(take, 1, group.size() - 1);
    out.train_rows.insert(out.train_rows.end(), group.begin(),
                          group.begin() + static_cast<long>(take));
    out.test_rows.insert(out.test_rows.end(),
                         group.begin() + static_cast<long>(take), group.end());
  }
  std::sort(out.train_rows.begin(), out.train_rows.end());
  std::sort(out.test_rows.begin(), out.test_rows.end());
  out.train = dataset.subset(out.train_rows);
  out.test = dataset.subset(out.test_rows);
  return out;
}

std::pair<Dataset, Dataset> normalize(const Dataset& train, const Dataset& test) {
  if (train.feature_count != test.feature_count) {
    throw std::invalid_argument("normalize: feature counts differ");
  }
  const std::size_t dims = train.feature_count;
  std::vector<double> lo(dims, 0.0), hi(dims, 0.0);
  for (std::size_t d = 0; d < dims && train.instance_count() > 0; ++d) {
    lo[d] = hi[d] = train.at(0, d);
    for (std::size_t i = 1; i < train.instance_count(); ++i) {
      lo[d] = std::min(lo[d], train.at(i, d));
      hi[d] = std::max(hi[d], train.at(i, d));
    }
  }

  auto scale = [&](Dataset ds) {
    for (std::size_t i = 0; i < ds.instance_count(); ++i) {
      for (std::size_t d = 0; d < dims; ++d) {
        double& v = ds.features[i * dims + d];
        const double range = hi[d] - lo[d];
        v = range > 0.0 ? (v - lo[d]) / range : 0.0;
      }
    }
    return ds;
  };
  return {scale(train), scale(test)};
}

} // namespace asofs

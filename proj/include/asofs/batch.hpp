#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "asofs/optimizer.hpp"
#include "asofs/settings.hpp"

namespace asofs {

struct SummaryStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for a single value
  double best = 0.0;    // maximum
};

SummaryStats summarize(std::span<const double> values);

// Every (dataset, method, seed) combination of a batch.
struct BatchSpec {
  RunSettings base;
  std::vector<std::string> methods;
  std::vector<std::string> datasets;
  std::vector<std::uint64_t> seeds;
  unsigned jobs = 1;  // cells run concurrently

  // Keys: datasets (or data), methods, seeds ("1,2,3" or "1..10"),
  // seed-count (seeds 1..n, default 10), jobs, plus any run option.
  static BatchSpec from_key_values(const KeyValues& kv);
};

struct CellSummary {
  std::string dataset;
  std::string method;
  std::size_t runs = 0;
  std::vector<std::string> failures;  // "seed N: message"
  SummaryStats accuracy;
  double mean_selected = 0.0;
  double mean_fitness = 0.0;
};

struct BatchResult {
  std::vector<CellSummary> cells;
  std::vector<std::filesystem::path> reports;
};

// Runs every combination, writing one report (and convergence CSV) per run
// plus aggregate.csv and aggregate.json into out_dir. Failed runs are listed
// in their cell; the batch continues.
BatchResult run_batch(const BatchSpec& spec, const std::filesystem::path& out_dir);

} // namespace asofs

#include "asofs/batch.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>

#include "asofs/dataset.hpp"
#include "asofs/errors.hpp"
#include "asofs/parallel.hpp"
#include "asofs/report.hpp"

namespace asofs {

SummaryStats summarize(std::span<const double> values) {
  SummaryStats s;
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  s.best = *std::max_element(values.begin(), values.end());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

BatchSpec BatchSpec::from_key_values(const KeyValues& kv) {
  BatchSpec spec;
  std::optional<std::size_t> seed_count;
  for (const auto& [key, value] : kv) {
    if (key == "datasets" || key == "data") {
      for (auto& d : split_list(value)) spec.datasets.push_back(d);
    } else if (key == "methods" || key == "method") {
      spec.methods = split_list(value);
    } else if (key == "seeds") {
      spec.seeds = parse_seed_list(value);
    } else if (key == "seed-count") {
      seed_count = static_cast<std::size_t>(std::stoull(value));
    } else if (key == "jobs") {
      spec.jobs = static_cast<unsigned>(std::stoul(value));
    } else if (!spec.base.apply(key, value)) {
      throw ConfigError("unknown batch option '" + key + "'");
    }
  }
  if (spec.datasets.empty()) throw ConfigError("batch: no datasets given");
  if (spec.methods.empty()) spec.methods = {"asos", "asov", "asos-sa", "asov-sa"};
  if (spec.seeds.empty()) {
    for (std::uint64_t s = 1; s <= seed_count.value_or(10); ++s) {
      spec.seeds.push_back(s);
    }
  }
  for (const auto& m : spec.methods) {
    OptimizerConfig probe;
    probe.set_method(m);
  }
  return spec;
}

BatchResult run_batch(const BatchSpec& spec, const std::filesystem::path& out_dir) {
  struct Task {
    std::size_t dataset;
    std::size_t method;
    std::uint64_t seed;
  };
  struct Outcome {
    std::optional<RunReport> report;
    std::string error;
    std::filesystem::path path;
  };

  // Load every dataset up front; a dataset that fails to load fails its cells.
  std::vector<std::optional<Dataset>> data(spec.datasets.size());
  std::vector<std::string> load_errors(spec.datasets.size());
  for (std::size_t d = 0; d < spec.datasets.size(); ++d) {
    try {
      data[d] = load_csv(spec.datasets[d], spec.base.label_col);
    } catch (const std::exception& e) {
      load_errors[d] = e.what();
    }
  }

  std::vector<Task> tasks;
  for (std::size_t d = 0; d < spec.datasets.size(); ++d) {
    for (std::size_t m = 0; m < spec.methods.size(); ++m) {
      for (auto seed : spec.seeds) tasks.push_back({d, m, seed});
    }
  }

  std::vector<Outcome> outcomes(tasks.size());
  parallel_for(tasks.size(), spec.jobs, [&](std::size_t n) {
    const auto& task = tasks[n];
    auto& out = outcomes[n];
    try {
      if (!data[task.dataset]) throw DataError(load_errors[task.dataset]);
      RunSettings settings = spec.base;
      settings.config.set_method(spec.methods[task.method]);
      settings.config.seed = task.seed;
      const auto config = settings.resolved();
      auto report = run(config, *data[task.dataset]);
      out.path = out_dir / (report.dataset + "__" + report.method + "__seed" +
                            std::to_string(task.seed) + ".json");
      write_report(report, out.path, spec.base.timing);
      out.report = std::move(report);
    } catch (const std::exception& e) {
      out.error = e.what();
    }
  });

  BatchResult result;
  for (std::size_t d = 0; d < spec.datasets.size(); ++d) {
    for (std::size_t m = 0; m < spec.methods.size(); ++m) {
      CellSummary cell;
      cell.dataset = data[d] ? data[d]->name
                             : std::filesystem::path(spec.datasets[d]).stem().string();
      OptimizerConfig probe;
      probe.set_method(spec.methods[m]);
      cell.method = probe.method();

      std::vector<double> accuracy, selected, fitness;
      for (std::size_t n = 0; n < tasks.size(); ++n) {
        if (tasks[n].dataset != d || tasks[n].method != m) continue;
        const auto& o = outcomes[n];
        if (!o.report) {
          cell.failures.push_back("seed " + std::to_string(tasks[n].seed) + ": " +
                                  o.error);
          continue;
        }
        result.reports.push_back(o.path);
        accuracy.push_back(o.report->test_accuracy);
        selected.push_back(static_cast<double>(o.report->selected_count));
        fitness.push_back(o.report->best_fitness);
      }
      cell.runs = accuracy.size();
      cell.accuracy = summarize(accuracy);
      cell.mean_selected = summarize(selected).mean;
      cell.mean_fitness = summarize(fitness).mean;
      result.cells.push_back(std::move(cell));
    }
  }

  std::ostringstream csv;
  csv.precision(17);
  csv << "dataset,method,runs,failures,mean_accuracy,std_accuracy,best_accuracy,"
         "mean_selected,mean_fitness\n";
  nlohmann::ordered_json agg = nlohmann::ordered_json::array();
  for (const auto& c : result.cells) {
    csv << c.dataset << ',' << c.method << ',' << c.runs << ','
        << c.failures.size() << ',' << c.accuracy.mean << ','
        << c.accuracy.stddev << ',' << c.accuracy.best << ','
        << c.mean_selected << ',' << c.mean_fitness << '\n';
    nlohmann::ordered_json j;
    j["dataset"] = c.dataset;
    j["method"] = c.method;
    j["runs"] = c.runs;
    j["mean_accuracy"] = c.accuracy.mean;
    j["std_accuracy"] = c.accuracy.stddev;
    j["best_accuracy"] = c.accuracy.best;
    j["mean_selected"] = c.mean_selected;
    j["mean_fitness"] = c.mean_fitness;
    j["failures"] = c.failures;
    agg.push_back(std::move(j));
  }
  write_text(out_dir / "aggregate.csv", csv.str());
  write_text(out_dir / "aggregate.json", agg.dump(2) + "\n");
  return result;
}

} // namespace asofs

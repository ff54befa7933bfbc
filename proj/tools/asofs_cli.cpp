// asofs: command-line harness for binary atom search feature selection.
//
//   asofs run    --data <csv> --method asov-sa --seed 1 --out report.json
//   asofs batch  --config batch.cfg --out-dir results/
//   asofs oracle --data <csv> [--out oracle.json]
//   asofs verify --report report.json --data <csv>
//
// Exit codes: 0 success, 1 configuration error, 2 data error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "asofs/batch.hpp"
#include "asofs/dataset.hpp"
#include "asofs/errors.hpp"
#include "asofs/optimizer.hpp"
#include "asofs/oracle.hpp"
#include "asofs/report.hpp"
#include "asofs/settings.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitData = 2;

// Run options are declared as strings and funneled through
// RunSettings::apply so that flags and config files share one parser.
struct FlagSet {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void add(CLI::App& app, const std::string& key, const std::string& help) {
    options[key] = app.add_option("--" + key, values[key], help);
  }

  // File values first, then flags given on the command line.
  void apply_to(asofs::RunSettings& settings, const asofs::KeyValues& file) const {
    for (const auto& [key, value] : file) {
      if (!settings.apply(key, value)) {
        throw asofs::ConfigError("unknown config key '" + key + "'");
      }
    }
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) settings.apply(key, values.at(key));
    }
  }
};

void add_run_flags(CLI::App& cmd, FlagSet& flags) {
  flags.add(cmd, "data", "Input CSV file");
  flags.add(cmd, "label-col", "Label column name or zero-based index (default: last)");
  flags.add(cmd, "method", "asos | asov | asos-sa | asov-sa");
  flags.add(cmd, "seed", "Random seed (default 0)");
  flags.add(cmd, "split-seed", "Train/test split seed (default: --seed)");
  flags.add(cmd, "pop", "Population size (default 20)");
  flags.add(cmd, "iters", "Iterations (default 30)");
  flags.add(cmd, "omega", "Error weight in the fitness (default 0.99)");
  flags.add(cmd, "k", "KNN neighbours (default 5)");
  flags.add(cmd, "alpha", "Depth weight (default 50)");
  flags.add(cmd, "beta", "Multiplier weight (default 0.2)");
  flags.add(cmd, "u", "Upper scaled-distance bound (default 1.24)");
  flags.add(cmd, "g0", "Base of the lower scaled-distance bound (default 1.1)");
  flags.add(cmd, "v-cap", "Velocity clamp per dimension (default 6)");
  flags.add(cmd, "stop-temp", "Annealing stop temperature (default 1)");
  flags.add(cmd, "cooling", "Annealing cooling factor (default 0.93)");
  flags.add(cmd, "sa-reference", "Worse-neighbour reference: best | current");
  flags.add(cmd, "sa-fraction", "Share of atoms annealed each iteration (default 1)");
  flags.add(cmd, "flip-mode", "fixed | sampled (default fixed)");
  flags.add(cmd, "flip-threshold", "Threshold in fixed mode (default 0.5)");
  flags.add(cmd, "train-fraction", "Training share of each class (default 0.8)");
  flags.add(cmd, "stratified", "Stratify the split (default true)");
  flags.add(cmd, "threads", "Worker threads inside a run (default 1)");
  flags.add(cmd, "out", "Report JSON path");
  flags.add(cmd, "timing", "Include wall time in the report (default false)");
}

int cmd_run(const FlagSet& flags, const std::string& config_file) {
  asofs::RunSettings settings;
  flags.apply_to(settings, config_file.empty() ? asofs::KeyValues{}
                                               : asofs::load_key_values(config_file));
  if (settings.data.empty()) throw asofs::ConfigError("run: --data is required");
  if (settings.out.empty()) throw asofs::ConfigError("run: --out is required");
  const auto config = settings.resolved();
  const auto dataset = asofs::load_csv(settings.data, settings.label_col);
  const auto report = asofs::run(config, dataset);
  asofs::write_report(report, settings.out, settings.timing);
  std::printf("%s %s seed=%llu accuracy=%.4f selected=%zu/%zu fitness=%.6f time=%.2fs\n",
              report.dataset.c_str(), report.method.c_str(),
              static_cast<unsigned long long>(config.seed), report.test_accuracy,
              report.selected_count, report.feature_count, report.best_fitness,
              report.wall_time_seconds);
  return 0;
}

int cmd_batch(const std::string& config_file, const std::string& out_dir) {
  const auto spec = asofs::BatchSpec::from_key_values(asofs::load_key_values(config_file));
  const auto result = asofs::run_batch(spec, out_dir);
  std::size_t failures = 0;
  for (const auto& c : result.cells) {
    std::printf("%-16s %-8s runs=%zu mean_acc=%.4f std=%.4f best=%.4f mean_sel=%.2f\n",
                c.dataset.c_str(), c.method.c_str(), c.runs, c.accuracy.mean,
                c.accuracy.stddev, c.accuracy.best, c.mean_selected);
    for (const auto& f : c.failures) std::fprintf(stderr, "  failed %s\n", f.c_str());
    failures += c.failures.size();
  }
  std::printf("%zu reports, %zu failures -> %s\n", result.reports.size(), failures,
              out_dir.c_str());
  return 0;
}

int cmd_oracle(const FlagSet& flags, const std::string& config_file) {
  asofs::RunSettings settings;
  flags.apply_to(settings, config_file.empty() ? asofs::KeyValues{}
                                               : asofs::load_key_values(config_file));
  if (settings.data.empty()) throw asofs::ConfigError("oracle: --data is required");
  const auto config = settings.resolved();
  const auto dataset = asofs::load_csv(settings.data, settings.label_col);
  const auto result = asofs::exhaustive_oracle(dataset, config.weights, config.knn_k,
                                               config.split, config.threads);
  const auto doc = asofs::oracle_to_json(result, dataset.name).dump(2) + "\n";
  if (settings.out.empty()) {
    std::cout << doc;
  } else {
    asofs::write_text(settings.out, doc);
  }
  return 0;
}

int cmd_verify(const std::string& report_path, const FlagSet& flags) {
  std::ifstream in(report_path);
  if (!in) throw asofs::DataError("cannot open " + report_path);
  const auto report = asofs::report_from_json(nlohmann::json::parse(in));
  asofs::RunSettings settings;
  flags.apply_to(settings, {});
  if (settings.data.empty()) throw asofs::ConfigError("verify: --data is required");
  const auto dataset = asofs::load_csv(settings.data, settings.label_col);
  const double accuracy = asofs::recompute_accuracy(report, dataset);
  const bool match = accuracy == report.test_accuracy;
  std::printf("recomputed accuracy %.17g, reported %.17g: %s\n", accuracy,
              report.test_accuracy, match ? "match" : "MISMATCH");
  return match ? 0 : kExitData;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binary atom search feature selection (ASO / ASO-SA) with KNN"};
  app.require_subcommand(1);

  std::string config_file;
  std::string out_dir;
  std::string report_path;

  auto* run = app.add_subcommand("run", "Run one optimization");
  FlagSet run_flags;
  add_run_flags(*run, run_flags);
  run->add_option("--config", config_file, "Key-value config file (flags override)");

  auto* batch = app.add_subcommand("batch", "Run a methods x datasets x seeds grid");
  batch->add_option("--config", config_file, "Batch config file")->required();
  batch->add_option("--out-dir", out_dir, "Output directory")->required();

  auto* oracle = app.add_subcommand("oracle", "Exhaustive search over all masks (d <= 20)");
  FlagSet oracle_flags;
  for (const char* key : {"data", "label-col", "seed", "split-seed", "omega", "k",
                          "train-fraction", "stratified", "threads", "out"}) {
    oracle_flags.add(*oracle, key, "see `run --help`");
  }
  oracle->add_option("--config", config_file, "Key-value config file");

  auto* verify = app.add_subcommand("verify", "Recompute a report's test accuracy");
  verify->add_option("--report", report_path, "Report JSON")->required();
  FlagSet verify_flags;
  verify_flags.add(*verify, "data", "Dataset CSV the report was produced from");
  verify_flags.add(*verify, "label-col", "Label column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return cmd_run(run_flags, config_file);
    if (*batch) return cmd_batch(config_file, out_dir);
    if (*oracle) return cmd_oracle(oracle_flags, config_file);
    if (*verify) return cmd_verify(report_path, verify_flags);
  } catch (const asofs::DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kExitData;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  }
  return 0;
}

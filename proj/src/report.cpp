#include "asofs/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "asofs/errors.hpp"

namespace asofs {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string_view to_string(AcceptanceReference r) {
  return r == AcceptanceReference::WalkBest ? "walk-best" : "current";
}

} // namespace

ordered_json config_to_json(const OptimizerConfig& c) {
  ordered_json j;
  j["method"] = c.method();
  j["transfer"] = to_string(c.transfer);
  j["sa_enabled"] = c.sa_enabled;
  j["population_size"] = c.population_size;
  j["iterations"] = c.dynamics.max_iterations;
  j["alpha"] = c.dynamics.alpha;
  j["beta"] = c.dynamics.beta;
  j["u"] = c.dynamics.u;
  j["g0"] = c.dynamics.g0;
  j["velocity_cap"] = c.dynamics.velocity_cap;
  j["omega"] = c.weights.omega;
  j["flip_mode"] = to_string(c.flip.mode);
  j["flip_threshold"] = c.flip.fixed_value;
  j["stop_temp"] = c.stop_temp;
  j["cooling_factor"] = c.cooling_factor;
  j["sa_reference"] = to_string(c.sa_reference);
  j["sa_fraction"] = c.sa_fraction;
  j["k"] = c.knn_k;
  j["train_fraction"] = c.split.train_fraction;
  j["stratified"] = c.split.stratified;
  j["split_seed"] = c.split.seed;
  j["seed"] = c.seed;
  return j;
}

OptimizerConfig config_from_json(const json& j) {
  OptimizerConfig c;
  c.set_method(j.at("method").get<std::string>());
  c.population_size = j.at("population_size").get<std::size_t>();
  c.dynamics.max_iterations = j.at("iterations").get<int>();
  c.dynamics.alpha = j.at("alpha").get<double>();
  c.dynamics.beta = j.at("beta").get<double>();
  c.dynamics.u = j.at("u").get<double>();
  c.dynamics.g0 = j.at("g0").get<double>();
  c.dynamics.velocity_cap = j.at("velocity_cap").get<double>();
  c.weights.omega = j.at("omega").get<double>();
  c.flip.mode = j.at("flip_mode").get<std::string>() == "sampled"
                    ? ThresholdMode::Sampled
                    : ThresholdMode::Fixed;
  c.flip.fixed_value = j.at("flip_threshold").get<double>();
  c.stop_temp = j.at("stop_temp").get<double>();
  c.cooling_factor = j.at("cooling_factor").get<double>();
  c.sa_reference = j.at("sa_reference").get<std::string>() == "current"
                       ? AcceptanceReference::Current
                       : AcceptanceReference::WalkBest;
  c.sa_fraction = j.at("sa_fraction").get<double>();
  c.knn_k = j.at("k").get<std::size_t>();
  c.split.train_fraction = j.at("train_fraction").get<double>();
  c.split.stratified = j.at("stratified").get<bool>();
  c.split.seed = j.at("split_seed").get<std::uint64_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

ordered_json report_to_json(const RunReport& r, bool include_timing) {
  ordered_json j;
  j["dataset"] = r.dataset;
  j["method"] = r.method;
  j["seed"] = r.config.seed;
  j["best_mask"] = r.best_mask.to_string();
  j["selected_count"] = r.selected_count;
  j["feature_count"] = r.feature_count;
  j["test_accuracy"] = r.test_accuracy;
  j["best_fitness"] = r.best_fitness;
  j["convergence"] = r.convergence;
  j["classifier"] = r.classifier;
  j["train_size"] = r.train_size;
  j["test_size"] = r.test_size;
  if (include_timing) j["wall_time_seconds"] = r.wall_time_seconds;
  j["config"] = config_to_json(r.config);
  return j;
}

RunReport report_from_json(const json& j) {
  RunReport r;
  r.dataset = j.at("dataset").get<std::string>();
  r.method = j.at("method").get<std::string>();
  r.best_mask = FeatureMask::from_string(j.at("best_mask").get<std::string>());
  r.selected_count = j.at("selected_count").get<std::size_t>();
  r.feature_count = j.at("feature_count").get<std::size_t>();
  r.test_accuracy = j.at("test_accuracy").get<double>();
  r.best_fitness = j.at("best_fitness").get<double>();
  r.convergence = j.at("convergence").get<std::vector<double>>();
  r.classifier = j.value("classifier", std::string{});
  r.train_size = j.value("train_size", std::size_t{0});
  r.test_size = j.value("test_size", std::size_t{0});
  r.wall_time_seconds = j.value("wall_time_seconds", 0.0);
  r.config = config_from_json(j.at("config"));
  return r;
}

std::string convergence_csv(const RunReport& report) {
  std::ostringstream out;
  out << "iteration,best_fitness\n";
  char buf[64];
  for (std::size_t t = 0; t < report.convergence.size(); ++t) {
    std::snprintf(buf, sizeof buf, "%.17g", report.convergence[t]);
    out << (t + 1) << ',' << buf << '\n';
  }
  return out.str();
}

ordered_json oracle_to_json(const OracleResult& result, const std::string& dataset) {
  ordered_json j;
  j["dataset"] = dataset;
  j["best_mask"] = result.mask.to_string();
  j["selected_count"] = result.value.selected_count;
  j["best_fitness"] = result.value.fitness;
  j["error_rate"] = result.value.error_rate;
  j["test_accuracy"] = 1.0 - result.value.error_rate;
  j["masks_evaluated"] = result.masks_evaluated;
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("write failed: " + path.string());
}

void write_report(const RunReport& report, const std::filesystem::path& path,
                  bool include_timing) {
  write_text(path, report_to_json(report, include_timing).dump(2) + "\n");
  auto csv = path;
  csv.replace_filename(path.stem().string() + ".convergence.csv");
  write_text(csv, convergence_csv(report));
}

} // namespace asofs

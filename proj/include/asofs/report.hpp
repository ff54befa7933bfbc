#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "asofs/optimizer.hpp"
#include "asofs/oracle.hpp"

namespace asofs {

nlohmann::ordered_json config_to_json(const OptimizerConfig& config);
OptimizerConfig config_from_json(const nlohmann::json& j);

// Wall time is machine dependent; it is only emitted when asked for so that
// identical runs produce identical documents.
nlohmann::ordered_json report_to_json(const RunReport& report,
                                      bool include_timing = false);
RunReport report_from_json(const nlohmann::json& j);

// "iteration,best_fitness" rows, iteration counted from 1.
std::string convergence_csv(const RunReport& report);

nlohmann::ordered_json oracle_to_json(const OracleResult& result,
                                      const std::string& dataset);

// Writes `<path>` (JSON, 2-space indent, trailing newline) and the
// convergence CSV next to it as `<stem>.convergence.csv`.
void write_report(const RunReport& report, const std::filesystem::path& path,
                  bool include_timing = false);

void write_text(const std::filesystem::path& path, const std::string& text);

} // namespace asofs

#pragma once

#include <json.hpp>

#include <string>

#include "mixlab/diagnostics.hpp"
#include "mixlab/scheme.hpp"

namespace mixlab {

// Structured JSON report document:
// { pass_reports: [...], residual_tables: [...], degraded_checks: [...],
//   mixing_checks: [...], provenance: { config_hash } }

nlohmann::json to_json(const PassReport& report);
nlohmann::json to_json(const RunReport& report);
nlohmann::json to_json(const DegradedCheckReport& report);
nlohmann::json to_json(const MixingReport& report);
nlohmann::json to_json(const ResidualTable& table);

nlohmann::json make_report_document(
    const RunReport* run, const std::vector<ResidualTable>& residual_tables,
    const std::vector<DegradedCheckReport>& degraded_checks,
    const std::vector<MixingReport>& mixing_checks, std::uint64_t config_hash);

void write_json_file(const std::string& path, const nlohmann::json& doc);

} // namespace mixlab

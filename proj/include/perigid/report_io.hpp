#pragma once

// JSON form of an AnalysisReport. Edge and vertex numbers are 1-based, as in
// graph files. The document carries "schema_version": 1.

#include "perigid/characterize.hpp"

#include <json.hpp>

namespace perigid {

inline constexpr int kReportSchemaVersion = 1;

nlohmann::json report_to_json(const AnalysisReport& report);

/// Throws std::invalid_argument on a missing field or another schema version.
AnalysisReport report_from_json(const nlohmann::json& doc);

}  // namespace perigid

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "collindiag/diagnose.hpp"

namespace collindiag {

enum class ReportFormat { Text, Json };

std::optional<ReportFormat> parse_format(std::string_view text);

/// Deterministic rendering: identical reports give identical bytes.
std::string render(const DiagnosticsReport& report, ReportFormat format);

nlohmann::ordered_json report_to_json(const DiagnosticsReport& report);
/// Inverse of report_to_json. Throws nlohmann::json::exception or DataError
/// on malformed documents.
DiagnosticsReport report_from_json(const nlohmann::ordered_json& doc);

}  // namespace collindiag

#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "steadycheck/convergence.hpp"
#include "steadycheck/core.hpp"
#include "steadycheck/transient.hpp"

namespace steadycheck {

inline constexpr const char* kReportSchemaVersion = "1.0";

struct InputDescriptor {
  std::string path;
  std::string value_column;
  std::optional<std::string> time_column;  // absent: synthesized 1..N
  std::size_t samples = 0;
};

// Machine-readable result of one analysis. Field layout is documented in
// README.md; schema_version changes whenever it does.
struct AnalysisReportDocument {
  std::string schema_version = kReportSchemaVersion;
  InputDescriptor input;
  AnalysisConfig config;
  Status status = Status::InsufficientData;
  std::optional<TransientReport> transient;
  std::optional<ConvergenceReport> convergence;
  std::optional<std::string> message;
};

AnalysisReportDocument make_report(const InputDescriptor& input, const AnalysisConfig& config,
                                   const TimeSeries& series);

nlohmann::json to_json(const AnalysisReportDocument& doc);
AnalysisReportDocument report_from_json(const nlohmann::json& j);

// Pretty-printed JSON with a trailing newline. Non-finite numbers map to null.
std::string serialize_report(const AnalysisReportDocument& doc);
std::string format_text(const AnalysisReportDocument& doc);

// 0 converged; 1 for every other status.
int exit_code_for(Status status);

}  // namespace steadycheck

#include <catch_amalgamated.hpp>

#include <string>

#include "steadycheck/report.hpp"
#include "steadycheck/synth.hpp"

using namespace steadycheck;

namespace {

AnalysisReportDocument fixture_report() {
  AnalysisConfig c;
  c.confidence = 0.99;
  c.tolerance = 1e-3;
  const TimeSeries s = generate(transient_fixture(1));
  return make_report({"fixture.csv", "value", "time", 0}, c, s);
}

}  // namespace

TEST_CASE("report survives a JSON round trip", "[report]") {
  const AnalysisReportDocument doc = fixture_report();
  const std::string text = serialize_report(doc);
  const AnalysisReportDocument back = report_from_json(nlohmann::json::parse(text));
  CHECK(serialize_report(back) == text);
  CHECK(back.input.samples == 600);
  REQUIRE(back.transient.has_value());
  CHECK(back.transient->levels.size() == doc.transient->levels.size());
}

TEST_CASE("report layout", "[report]") {
  const nlohmann::json j = to_json(fixture_report());
  CHECK(j.at("schema_version") == kReportSchemaVersion);
  for (const char* key : {"input", "config", "status", "message", "transient", "convergence"}) {
    CHECK(j.contains(key));
  }
  CHECK(j.at("config").at("candidate_strategy") == "finest_level");
  CHECK(j.at("transient").at("cut_index").get<std::size_t>() < 600);
  CHECK(j.at("convergence").at("n").get<std::size_t>() ==
        600 - j.at("transient").at("cut_index").get<std::size_t>());
}

TEST_CASE("short input yields insufficient data without detection", "[report]") {
  const AnalysisReportDocument doc =
      make_report({"short.csv", "v", std::nullopt, 0}, AnalysisConfig{}, validate_series(std::vector<double>(5, 1.0)));
  CHECK(doc.status == Status::InsufficientData);
  CHECK_FALSE(doc.transient.has_value());
  REQUIRE(doc.message.has_value());
  const nlohmann::json j = nlohmann::json::parse(serialize_report(doc));
  CHECK(j.at("transient").is_null());
  CHECK(j.at("input").at("time_column").is_null());
}

TEST_CASE("exit codes and text output", "[report]") {
  CHECK(exit_code_for(Status::Converged) == 0);
  CHECK(exit_code_for(Status::Drifting) == 1);
  CHECK(exit_code_for(Status::NotConverged) == 1);
  CHECK(exit_code_for(Status::InsufficientData) == 1);
  const std::string text = format_text(fixture_report());
  CHECK(text.find("t_cut") != std::string::npos);
  CHECK(text.find("status:") != std::string::npos);
}

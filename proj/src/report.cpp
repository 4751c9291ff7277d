#include "steadycheck/report.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace steadycheck {

using nlohmann::json;

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double read_number(const json& j, const char* key) {
  const json& v = j.at(key);
  return v.is_null() ? std::numeric_limits<double>::infinity() : v.get<double>();
}

json config_json(const AnalysisConfig& c) {
  return {
      {"confidence", c.confidence},
      {"tolerance", c.tolerance},
      {"detection_threshold", c.spread_threshold()},
      {"min_filter_length", c.min_filter_length},
      {"candidate_strategy", to_string(c.candidate_strategy)},
      {"acf_truncation", to_string(c.acf_truncation)},
      {"trend_check", c.trend_check_enabled},
      {"max_cut_fraction", c.max_cut_fraction},
  };
}

AnalysisConfig config_from_json(const json& j) {
  AnalysisConfig c;
  c.confidence = j.at("confidence").get<double>();
  c.tolerance = j.at("tolerance").get<double>();
  const double threshold = j.at("detection_threshold").get<double>();
  if (threshold != c.tolerance) c.detection_threshold = threshold;
  c.min_filter_length = j.at("min_filter_length").get<std::size_t>();
  c.candidate_strategy = parse_candidate_strategy(j.at("candidate_strategy").get<std::string>()).value();
  c.acf_truncation = parse_acf_truncation(j.at("acf_truncation").get<std::string>()).value();
  c.trend_check_enabled = j.at("trend_check").get<bool>();
  c.max_cut_fraction = j.at("max_cut_fraction").get<double>();
  return c;
}

json transient_json(const TransientReport& t) {
  json levels = json::array();
  for (const LevelDetection& level : t.levels) {
    json candidates = json::array();
    for (const CandidateMinimum& c : level.candidates) {
      candidates.push_back({{"index", c.index_in_level},
                            {"time", number(c.mapped_time)},
                            {"rmse", number(c.rmse_value)},
                            {"spread", number(c.local_spread)},
                            {"validated", c.validated}});
    }
    levels.push_back({{"level", level.level_index},
                      {"length", level.length},
                      {"selected_index", level.selected_index},
                      {"selected_from_validated", level.selected_from_validated},
                      {"t_min", number(level.t_min)},
                      {"candidates", std::move(candidates)}});
  }
  return {{"t_cut", number(t.t_cut)},
          {"cut_index", t.cut_index},
          {"steady_fraction", number(t.steady_fraction)},
          {"strategy", to_string(t.strategy_used)},
          {"levels", std::move(levels)}};
}

TransientReport transient_from_json(const json& j) {
  TransientReport t;
  t.t_cut = read_number(j, "t_cut");
  t.cut_index = j.at("cut_index").get<std::size_t>();
  t.steady_fraction = read_number(j, "steady_fraction");
  t.strategy_used = parse_candidate_strategy(j.at("strategy").get<std::string>()).value();
  for (const json& lj : j.at("levels")) {
    LevelDetection level;
    level.level_index = lj.at("level").get<std::size_t>();
    level.length = lj.at("length").get<std::size_t>();
    level.selected_index = lj.at("selected_index").get<std::size_t>();
    level.selected_from_validated = lj.at("selected_from_validated").get<bool>();
    level.t_min = read_number(lj, "t_min");
    for (const json& cj : lj.at("candidates")) {
      CandidateMinimum c;
      c.level_index = level.level_index;
      c.index_in_level = cj.at("index").get<std::size_t>();
      c.mapped_time = read_number(cj, "time");
      c.rmse_value = read_number(cj, "rmse");
      c.local_spread = read_number(cj, "spread");
      c.validated = cj.at("validated").get<bool>();
      level.candidates.push_back(c);
    }
    t.levels.push_back(std::move(level));
  }
  return t;
}

json convergence_json(const ConvergenceReport& c) {
  return {
      {"status", to_string(c.status)},
      {"mean", number(c.mean)},
      {"sd", number(c.sample_sd)},
      {"n", c.n},
      {"n_eff", number(c.n_eff)},
      {"n_eff_clamped", c.n_eff_clamped},
      {"acf_raw_denominator", number(c.acf_raw_denominator)},
      {"acf_truncation_lag", c.acf_truncation_lag},
      {"sem", number(c.sem)},
      {"sem_eff", number(c.sem_eff)},
      {"dof_eff", number(c.dof_eff)},
      {"t_quantile", number(c.t_quantile)},
      {"ci_half_width", number(c.ci_half_width)},
      {"uncorrected_t_quantile", number(c.uncorrected_t_quantile)},
      {"uncorrected_half_width", number(c.uncorrected_half_width)},
      {"slope", number(c.slope)},
      {"slope_per_time", number(c.slope_per_time)},
      {"accumulated_trend", number(c.accumulated_trend)},
      {"ci_ok", c.ci_ok},
      {"trend_ok", c.trend_ok},
      {"trend_checked", c.trend_checked},
      {"cut_ok", c.cut_ok},
      {"converged", c.converged},
  };
}

ConvergenceReport convergence_from_json(const json& j) {
  ConvergenceReport c;
  c.status = parse_status(j.at("status").get<std::string>()).value();
  c.mean = read_number(j, "mean");
  c.sample_sd = read_number(j, "sd");
  c.n = j.at("n").get<std::size_t>();
  c.n_eff = read_number(j, "n_eff");
  c.n_eff_clamped = j.at("n_eff_clamped").get<bool>();
  c.acf_raw_denominator = read_number(j, "acf_raw_denominator");
  c.acf_truncation_lag = j.at("acf_truncation_lag").get<std::size_t>();
  c.sem = read_number(j, "sem");
  c.sem_eff = read_number(j, "sem_eff");
  c.dof_eff = read_number(j, "dof_eff");
  c.t_quantile = read_number(j, "t_quantile");
  c.ci_half_width = read_number(j, "ci_half_width");
  c.uncorrected_t_quantile = read_number(j, "uncorrected_t_quantile");
  c.uncorrected_half_width = read_number(j, "uncorrected_half_width");
  c.slope = read_number(j, "slope");
  c.slope_per_time = read_number(j, "slope_per_time");
  c.accumulated_trend = read_number(j, "accumulated_trend");
  c.ci_ok = j.at("ci_ok").get<bool>();
  c.trend_ok = j.at("trend_ok").get<bool>();
  c.trend_checked = j.at("trend_checked").get<bool>();
  c.cut_ok = j.at("cut_ok").get<bool>();
  c.converged = j.at("converged").get<bool>();
  return c;
}

}  // namespace

AnalysisReportDocument make_report(const InputDescriptor& input, const AnalysisConfig& config,
                                   const TimeSeries& series) {
  AnalysisReportDocument doc;
  doc.input = input;
  doc.input.samples = series.size();
  doc.config = config;
  if (series.size() < kMinDetectionLength) {
    doc.status = Status::InsufficientData;
    doc.message = "need at least " + std::to_string(kMinDetectionLength) +
                  " samples for transient detection, have " + std::to_string(series.size());
    return doc;
  }
  Assessment a = assess(series, config);
  doc.status = a.convergence.status;
  if (a.convergence.status == Status::NotConverged && !std::isfinite(a.convergence.ci_half_width)) {
    doc.message = "not converged: insufficient independent samples";
  } else if (!a.convergence.cut_ok) {
    doc.message = "transient cutoff lies beyond max_cut_fraction of the series; the mean is still drifting";
  }
  doc.transient = std::move(a.transient);
  doc.convergence = std::move(a.convergence);
  return doc;
}

json to_json(const AnalysisReportDocument& doc) {
  json input = {{"path", doc.input.path},
                {"value_column", doc.input.value_column},
                {"time_column", doc.input.time_column ? json(*doc.input.time_column) : json(nullptr)},
                {"samples", doc.input.samples}};
  return {
      {"schema_version", doc.schema_version},
      {"input", std::move(input)},
      {"config", config_json(doc.config)},
      {"status", to_string(doc.status)},
      {"message", doc.message ? json(*doc.message) : json(nullptr)},
      {"transient", doc.transient ? transient_json(*doc.transient) : json(nullptr)},
      {"convergence", doc.convergence ? convergence_json(*doc.convergence) : json(nullptr)},
  };
}

AnalysisReportDocument report_from_json(const json& j) {
  AnalysisReportDocument doc;
  doc.schema_version = j.at("schema_version").get<std::string>();
  const json& in = j.at("input");
  doc.input.path = in.at("path").get<std::string>();
  doc.input.value_column = in.at("value_column").get<std::string>();
  if (!in.at("time_column").is_null()) doc.input.time_column = in.at("time_column").get<std::string>();
  doc.input.samples = in.at("samples").get<std::size_t>();
  doc.config = config_from_json(j.at("config"));
  doc.status = parse_status(j.at("status").get<std::string>()).value();
  if (!j.at("message").is_null()) doc.message = j.at("message").get<std::string>();
  if (!j.at("transient").is_null()) doc.transient = transient_from_json(j.at("transient"));
  if (!j.at("convergence").is_null()) doc.convergence = convergence_from_json(j.at("convergence"));
  return doc;
}

std::string serialize_report(const AnalysisReportDocument& doc) {
  return to_json(doc).dump(2) + "\n";
}

std::string format_text(const AnalysisReportDocument& doc) {
  std::ostringstream out;
  out.precision(6);
  out << "input:      " << doc.input.path << " (" << doc.input.samples << " samples, column "
      << doc.input.value_column << ")\n";
  out << "status:     " << to_string(doc.status) << "\n";
  if (doc.message) out << "note:       " << *doc.message << "\n";
  if (doc.transient) {
    const TransientReport& t = *doc.transient;
    out << "transient:  t_cut = " << t.t_cut << " (index " << t.cut_index << ", "
        << 100.0 * t.steady_fraction << "% retained, " << to_string(t.strategy_used) << ")\n";
  }
  if (doc.convergence) {
    const ConvergenceReport& c = *doc.convergence;
    out << "mean:       " << c.mean << " +/- " << c.ci_half_width << " ("
        << 100.0 * doc.config.confidence << "% CI, tolerance " << doc.config.tolerance << ")\n";
    out << "sd:         " << c.sample_sd << "\n";
    out << "samples:    n = " << c.n << ", n_eff = " << c.n_eff << (c.n_eff_clamped ? " (clamped)" : "")
        << "\n";
    out << "trend:      n*|slope| = " << c.accumulated_trend << (c.trend_ok ? " ok" : " exceeds tolerance")
        << (c.trend_checked ? "" : " (not checked)") << "\n";
  }
  return out.str();
}

int exit_code_for(Status status) { return status == Status::Converged ? 0 : 1; }

}  // namespace steadycheck

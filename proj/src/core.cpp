#include "steadycheck/core.hpp"

#include <cmath>

namespace steadycheck {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MismatchedLengths: return "MismatchedLengths";
    case ErrorCode::NonMonotonicTime: return "NonMonotonicTime";
    case ErrorCode::NonFiniteSample: return "NonFiniteSample";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::LevelTooShort: return "LevelTooShort";
    case ErrorCode::CurveTooShort: return "CurveTooShort";
    case ErrorCode::SegmentTooShort: return "SegmentTooShort";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DegenerateDof: return "DegenerateDof";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MissingColumn: return "MissingColumn";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> position)
    : std::runtime_error(message), code_(code), position_(position) {}

TimeSeries TimeSeries::tail(std::size_t begin) const {
  if (begin > size()) throw Error(ErrorCode::DomainError, "tail: begin past end of series");
  return TimeSeries({values_.begin() + static_cast<std::ptrdiff_t>(begin), values_.end()},
                    {times_.begin() + static_cast<std::ptrdiff_t>(begin), times_.end()});
}

TimeSeries TimeSeries::head(std::size_t count) const {
  if (count > size()) throw Error(ErrorCode::DomainError, "head: count past end of series");
  return TimeSeries({values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(count)},
                    {times_.begin(), times_.begin() + static_cast<std::ptrdiff_t>(count)});
}

TimeSeries validate_series(std::span<const double> values,
                           std::optional<std::span<const double>> times) {
  if (values.empty()) throw Error(ErrorCode::EmptySeries, "series has no samples");
  if (times && times->size() != values.size()) {
    throw Error(ErrorCode::MismatchedLengths,
                "values has " + std::to_string(values.size()) + " samples but times has " +
                    std::to_string(times->size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorCode::NonFiniteSample, "non-finite value at index " + std::to_string(i), i);
    }
  }

  std::vector<double> t;
  if (times) {
    t.assign(times->begin(), times->end());
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!std::isfinite(t[i])) {
        throw Error(ErrorCode::NonFiniteSample, "non-finite time at index " + std::to_string(i), i);
      }
      if (i > 0 && !(t[i] > t[i - 1])) {
        throw Error(ErrorCode::NonMonotonicTime,
                    "time does not increase at index " + std::to_string(i), i);
      }
    }
  } else {
    t.resize(values.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i + 1);
  }
  return TimeSeries({values.begin(), values.end()}, std::move(t));
}

std::string_view to_string(CandidateStrategy s) {
  switch (s) {
    case CandidateStrategy::FinestLevel: return "finest_level";
    case CandidateStrategy::LastLevel: return "last_level";
    case CandidateStrategy::MajorityVote: return "majority_vote";
  }
  return "unknown";
}

std::string_view to_string(AcfTruncation t) {
  switch (t) {
    case AcfTruncation::Full: return "full";
    case AcfTruncation::FirstNegative: return "first_negative";
  }
  return "unknown";
}

std::optional<CandidateStrategy> parse_candidate_strategy(std::string_view s) {
  if (s == "finest_level") return CandidateStrategy::FinestLevel;
  if (s == "last_level") return CandidateStrategy::LastLevel;
  if (s == "majority_vote") return CandidateStrategy::MajorityVote;
  return std::nullopt;
}

std::optional<AcfTruncation> parse_acf_truncation(std::string_view s) {
  if (s == "full") return AcfTruncation::Full;
  if (s == "first_negative") return AcfTruncation::FirstNegative;
  return std::nullopt;
}

void AnalysisConfig::validate() const {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "confidence must lie in (0, 1)");
  }
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
    throw Error(ErrorCode::InvalidConfig, "tolerance must be positive");
  }
  if (detection_threshold && (!(*detection_threshold >= 0.0) || !std::isfinite(*detection_threshold))) {
    throw Error(ErrorCode::InvalidConfig, "detection threshold must be non-negative");
  }
  if (min_filter_length < 2) {
    throw Error(ErrorCode::InvalidConfig, "min_filter_length must be at least 2");
  }
  if (!(max_cut_fraction > 0.0 && max_cut_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "max_cut_fraction must lie in (0, 1]");
  }
}

}  // namespace steadycheck

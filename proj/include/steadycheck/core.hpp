#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace steadycheck {

enum class ErrorCode {
  MismatchedLengths,
  NonMonotonicTime,
  NonFiniteSample,
  EmptySeries,
  SeriesTooShort,
  LevelTooShort,
  CurveTooShort,
  SegmentTooShort,
  ZeroVariance,
  DomainError,
  DegenerateDof,
  InvalidConfig,
  InvalidSpec,
  FileNotFound,
  ParseError,
  MissingColumn,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library. `position()` carries the offending
// sample index (0-based) or file line number (1-based) when one applies.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> position = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
};

// Ordered, finite samples with a strictly increasing time axis.
// Immutable once constructed; only validate_series() builds one.
class TimeSeries {
 public:
  TimeSeries() = default;

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> times() const noexcept { return times_; }
  double value(std::size_t i) const { return values_.at(i); }
  double time(std::size_t i) const { return times_.at(i); }

  // Samples [begin, size()).
  TimeSeries tail(std::size_t begin) const;
  // Samples [0, count).
  TimeSeries head(std::size_t count) const;

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

 private:
  friend TimeSeries validate_series(std::span<const double>, std::optional<std::span<const double>>);
  TimeSeries(std::vector<double> values, std::vector<double> times)
      : values_(std::move(values)), times_(std::move(times)) {}

  std::vector<double> values_;
  std::vector<double> times_;
};

// Checks lengths, finiteness and strict monotonicity of time. Without a time
// axis the samples are stamped 1, 2, ..., N.
TimeSeries validate_series(std::span<const double> values,
                           std::optional<std::span<const double>> times = std::nullopt);

inline TimeSeries validate_series(const TimeSeries& series) {
  return validate_series(series.values(), series.times());
}

enum class CandidateStrategy { FinestLevel, LastLevel, MajorityVote };
enum class AcfTruncation { Full, FirstNegative };

std::string_view to_string(CandidateStrategy s);
std::string_view to_string(AcfTruncation t);
std::optional<CandidateStrategy> parse_candidate_strategy(std::string_view s);
std::optional<AcfTruncation> parse_acf_truncation(std::string_view s);

// Minimum series length accepted by transient detection.
inline constexpr std::size_t kMinDetectionLength = 8;

struct AnalysisConfig {
  double confidence = 0.95;
  double tolerance = 1e-3;
  // Threshold on the local spread used to validate minima. Falls back to
  // `tolerance` when unset.
  std::optional<double> detection_threshold;
  std::size_t min_filter_length = 2;
  CandidateStrategy candidate_strategy = CandidateStrategy::FinestLevel;
  AcfTruncation acf_truncation = AcfTruncation::Full;
  bool trend_check_enabled = true;
  // A cut later than this fraction of the series means the RMSE minimum is
  // still chasing the end of the record; the run is then reported as
  // drifting. 1 disables the guard.
  double max_cut_fraction = 0.5;

  double spread_threshold() const { return detection_threshold.value_or(tolerance); }

  // Throws Error{InvalidConfig} on out-of-range fields.
  void validate() const;
};

}  // namespace steadycheck

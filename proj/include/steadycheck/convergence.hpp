#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "steadycheck/autocorr.hpp"
#include "steadycheck/core.hpp"
#include "steadycheck/student_t.hpp"
#include "steadycheck/transient.hpp"

namespace steadycheck {

enum class Status { Converged, Drifting, NotConverged, InsufficientData };

std::string_view to_string(Status s);
std::optional<Status> parse_status(std::string_view s);

struct ConfidenceInterval {
  double mean = 0.0;
  double sd = 0.0;
  double sem = 0.0;          // s / sqrt(sample count used)
  double dof = 0.0;
  double t_quantile = 0.0;
  double half_width = 0.0;
};

// Two-sided 100*C% interval for the mean. Without n_eff the sample count is
// the segment length n; with n_eff both the standard error and the degrees of
// freedom (n_eff - 1, not rounded) come from it.
// Throws SegmentTooShort (n < 2), DegenerateDof (n_eff <= 1 or n_eff > n).
ConfidenceInterval confidence_interval(std::span<const double> segment, double confidence,
                                       std::optional<double> n_eff = std::nullopt);

struct TrendCheck {
  double slope = 0.0;            // OLS slope against sample index
  double accumulated = 0.0;      // n * |slope|
  bool ok = false;
};

// Least-squares slope of the values against 1..n; ok when n*|slope| <= tolerance.
TrendCheck trend_check(std::span<const double> segment, double tolerance);

// OLS slope of values against an arbitrary abscissa (diagnostic only).
double ols_slope(std::span<const double> x, std::span<const double> y);

struct ConvergenceReport {
  Status status = Status::InsufficientData;
  double mean = 0.0;
  double sample_sd = 0.0;
  std::size_t n = 0;
  double n_eff = 0.0;
  bool n_eff_clamped = false;
  double acf_raw_denominator = 1.0;
  std::size_t acf_truncation_lag = 0;
  double sem = 0.0;
  double sem_eff = 0.0;
  double dof_eff = 0.0;
  double t_quantile = 0.0;
  double ci_half_width = 0.0;
  // Interval under the independence assumption, reported for comparison.
  double uncorrected_t_quantile = 0.0;
  double uncorrected_half_width = 0.0;
  double slope = 0.0;
  double slope_per_time = 0.0;
  double accumulated_trend = 0.0;
  bool ci_ok = false;
  bool trend_ok = false;
  bool trend_checked = true;
  bool cut_ok = true;  // cut_index within max_cut_fraction of the series
  bool converged = false;
};

struct Assessment {
  TransientReport transient;
  ConvergenceReport convergence;
};

// Convergence of an already-truncated steady segment.
ConvergenceReport assess_segment(const TimeSeries& segment, const AnalysisConfig& config);

// Transient detection, truncation, autocorrelation-corrected interval and
// trend check. Throws SeriesTooShort when N is below kMinDetectionLength.
Assessment assess(const TimeSeries& series, const AnalysisConfig& config);

struct EarliestConvergence {
  std::size_t samples = 0;  // prefix length at which assess first converged
  Assessment assessment;
};

// Re-runs assess on prefixes of length first, first+stride, ... and stops at
// the first converged one.
std::optional<EarliestConvergence> earliest_convergence(const TimeSeries& series,
                                                        const AnalysisConfig& config,
                                                        std::size_t first = kMinDetectionLength,
                                                        std::size_t stride = 1);

}  // namespace steadycheck

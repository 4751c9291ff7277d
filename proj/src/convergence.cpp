#include "steadycheck/convergence.hpp"

#include <cmath>
#include <limits>

namespace steadycheck {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Converged: return "converged";
    case Status::Drifting: return "drifting";
    case Status::NotConverged: return "not_converged";
    case Status::InsufficientData: return "insufficient_data";
  }
  return "unknown";
}

std::optional<Status> parse_status(std::string_view s) {
  if (s == "converged") return Status::Converged;
  if (s == "drifting") return Status::Drifting;
  if (s == "not_converged") return Status::NotConverged;
  if (s == "insufficient_data") return Status::InsufficientData;
  return std::nullopt;
}

namespace {

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

MeanSd mean_sd(std::span<const double> x) {
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - mean;
    mean += d / static_cast<double>(i + 1);
    m2 += d * (x[i] - mean);
  }
  const double var = x.size() > 1 ? std::max(m2, 0.0) / static_cast<double>(x.size() - 1) : 0.0;
  return {mean, std::sqrt(var)};
}

}  // namespace

ConfidenceInterval confidence_interval(std::span<const double> segment, double confidence,
                                       std::optional<double> n_eff) {
  const std::size_t n = segment.size();
  if (n < 2) throw Error(ErrorCode::SegmentTooShort, "confidence interval needs at least 2 samples");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw Error(ErrorCode::DomainError, "confidence must lie in (0, 1)");
  }
  const double count = n_eff.value_or(static_cast<double>(n));
  if (!(count > 1.0) || count > static_cast<double>(n)) {
    throw Error(ErrorCode::DegenerateDof,
                "not converged: insufficient independent samples (n_eff must lie in (1, n])");
  }

  const MeanSd m = mean_sd(segment);
  ConfidenceInterval ci;
  ci.mean = m.mean;
  ci.sd = m.sd;
  ci.sem = m.sd / std::sqrt(count);
  ci.dof = count - 1.0;
  ci.t_quantile = t_quantile(1.0 - (1.0 - confidence) / 2.0, ci.dof);
  ci.half_width = ci.t_quantile * ci.sem;
  return ci;
}

double ols_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw Error(ErrorCode::SegmentTooShort, "slope needs at least 2 points");
  const MeanSd mx = mean_sd(x);
  const MeanSd my = mean_sd(y);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx.mean;
    sxy += dx * (y[i] - my.mean);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

TrendCheck trend_check(std::span<const double> segment, double tolerance) {
  const std::size_t n = segment.size();
  if (n < 2) throw Error(ErrorCode::SegmentTooShort, "trend check needs at least 2 samples");

  // Index abscissa 1..n has mean (n+1)/2 and sum of squares n(n^2-1)/12.
  const double nd = static_cast<double>(n);
  const double centre = 0.5 * (nd + 1.0);
  const double mean = mean_sd(segment).mean;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (static_cast<double>(i + 1) - centre) * (segment[i] - mean);
  }
  const double sxx = nd * (nd * nd - 1.0) / 12.0;

  TrendCheck out;
  out.slope = sxy / sxx;
  out.accumulated = nd * std::fabs(out.slope);
  // Slack of a few ulps so a ramp computed to sit exactly on the boundary
  // is not rejected by rounding in the regression sums.
  out.ok = out.accumulated <= tolerance * (1.0 + 1e-12);
  return out;
}

ConvergenceReport assess_segment(const TimeSeries& segment, const AnalysisConfig& config) {
  config.validate();
  ConvergenceReport r;
  r.n = segment.size();
  r.trend_checked = config.trend_check_enabled;
  const std::span<const double> x = segment.values();
  if (r.n < 4) {
    r.status = Status::InsufficientData;
    return r;
  }

  const ConfidenceInterval plain = confidence_interval(x, config.confidence);
  r.mean = plain.mean;
  r.sample_sd = plain.sd;
  r.sem = plain.sem;
  r.uncorrected_t_quantile = plain.t_quantile;
  r.uncorrected_half_width = plain.half_width;

  const TrendCheck trend = trend_check(x, config.tolerance);
  r.slope = trend.slope;
  r.accumulated_trend = trend.accumulated;
  r.trend_ok = trend.ok;
  r.slope_per_time = ols_slope(segment.times(), x);

  bool dof_ok = true;
  if (plain.sd == 0.0) {
    // Constant segment: the ACF is undefined and the mean is exact.
    r.n_eff = static_cast<double>(r.n);
    r.dof_eff = r.n_eff - 1.0;
    r.t_quantile = plain.t_quantile;
    r.sem_eff = 0.0;
    r.ci_half_width = 0.0;
  } else {
    const AcfEstimate rho = acf(x);
    const EffectiveSampleSize ess = effective_sample_size(rho, config.acf_truncation);
    r.n_eff = ess.n_eff;
    r.n_eff_clamped = ess.clamped;
    r.acf_raw_denominator = ess.raw_denominator;
    r.acf_truncation_lag = ess.truncation_lag;
    r.sem_eff = plain.sd / std::sqrt(r.n_eff);
    r.dof_eff = r.n_eff - 1.0;
    if (r.n_eff > 1.0) {
      const ConfidenceInterval corrected = confidence_interval(x, config.confidence, r.n_eff);
      r.t_quantile = corrected.t_quantile;
      r.ci_half_width = corrected.half_width;
    } else {
      dof_ok = false;
      r.t_quantile = std::numeric_limits<double>::infinity();
      r.ci_half_width = std::numeric_limits<double>::infinity();
    }
  }

  r.ci_ok = dof_ok && r.ci_half_width < config.tolerance;
  r.converged = r.ci_ok && (r.trend_ok || !config.trend_check_enabled);
  if (r.converged) {
    r.status = Status::Converged;
  } else if (r.ci_ok) {
    r.status = Status::Drifting;
  } else {
    r.status = Status::NotConverged;
  }
  return r;
}

Assessment assess(const TimeSeries& series, const AnalysisConfig& config) {
  Assessment out;
  out.transient = detect_transient(series, config);
  out.convergence = assess_segment(series.tail(out.transient.cut_index), config);
  ConvergenceReport& c = out.convergence;
  c.cut_ok = static_cast<double>(out.transient.cut_index) <=
             config.max_cut_fraction * static_cast<double>(series.size());
  if (!c.cut_ok) {
    c.converged = false;
    c.status = Status::Drifting;
  }
  return out;
}

std::optional<EarliestConvergence> earliest_convergence(const TimeSeries& series,
                                                        const AnalysisConfig& config,
                                                        std::size_t first, std::size_t stride) {
  if (stride == 0) throw Error(ErrorCode::InvalidConfig, "stride must be positive");
  for (std::size_t n = std::max(first, kMinDetectionLength); n <= series.size(); n += stride) {
    Assessment a = assess(series.head(n), config);
    if (a.convergence.converged) return EarliestConvergence{n, std::move(a)};
  }
  return std::nullopt;
}

}  // namespace steadycheck

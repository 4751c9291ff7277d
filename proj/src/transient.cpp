#include "steadycheck/transient.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace steadycheck {

std::vector<std::size_t> find_local_minima(std::span<const double> rev_sem) {
  if (rev_sem.size() < 3) {
    throw Error(ErrorCode::CurveTooShort, "local minima need a curve of at least 3 points");
  }
  std::vector<std::size_t> minima;
  for (std::size_t i = 1; i + 1 < rev_sem.size(); ++i) {
    if (rev_sem[i] < rev_sem[i - 1] && rev_sem[i] <= rev_sem[i + 1]) minima.push_back(i);
  }
  return minima;
}

double local_spread(std::span<const double> level_values, std::size_t i) {
  if (i == 0 || i + 1 >= level_values.size()) {
    throw Error(ErrorCode::DomainError, "spread window must be interior to the level");
  }
  const auto [lo, hi] = std::minmax({level_values[i - 1], level_values[i], level_values[i + 1]});
  return hi - lo;
}

std::vector<std::size_t> validate_candidates(std::span<const std::size_t> minima,
                                             std::span<const double> level_values,
                                             double threshold) {
  std::vector<std::size_t> kept;
  for (std::size_t i : minima) {
    if (local_spread(level_values, i) > threshold) kept.push_back(i);
  }
  return kept;
}

LevelDetection detect_on_level(const FilterLevel& level, double threshold) {
  const RmseCurve curve = reverse_cumulative_stats(level.values);
  const std::vector<double>& sem = curve.rev_sem;

  LevelDetection out;
  out.level_index = level.level_index;
  out.length = level.size();

  std::vector<std::size_t> minima;
  if (sem.size() >= 3) minima = find_local_minima(sem);

  bool have_valid = false;
  std::size_t best = 0;
  for (std::size_t i : minima) {
    CandidateMinimum c;
    c.level_index = level.level_index;
    c.index_in_level = i;
    c.rmse_value = sem[i];
    c.local_spread = local_spread(level.values, i);
    c.validated = c.local_spread > threshold;
    c.mapped_time = level.times[i];
    if (c.validated && (!have_valid || sem[i] < sem[best])) {
      best = i;
      have_valid = true;
    }
    out.candidates.push_back(c);
  }

  if (!have_valid) {
    best = static_cast<std::size_t>(std::min_element(sem.begin(), sem.end()) - sem.begin());
  }
  out.selected_index = best;
  out.selected_from_validated = have_valid;
  out.t_min = level.times[best];
  return out;
}

namespace {

// Largest sample index whose time does not exceed t (index 0 if t precedes
// the series). This is the floor of t onto the sample grid.
std::size_t floor_index(std::span<const double> times, double t) {
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return 0;
  return static_cast<std::size_t>(it - times.begin()) - 1;
}

std::size_t nearest_index(std::span<const double> times, double t) {
  const auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return 0;
  if (it == times.end()) return times.size() - 1;
  const auto hi = static_cast<std::size_t>(it - times.begin());
  const std::size_t lo = hi - 1;
  return (t - times[lo] <= times[hi] - t) ? lo : hi;
}

}  // namespace

TransientReport detect_transient(const TimeSeries& series, const AnalysisConfig& config) {
  config.validate();
  const std::size_t n = series.size();
  if (n < kMinDetectionLength) {
    throw Error(ErrorCode::SeriesTooShort, "transient detection needs at least " +
                                               std::to_string(kMinDetectionLength) + " samples");
  }
  if (config.min_filter_length >= n) {
    throw Error(ErrorCode::SeriesTooShort, "series is not longer than the minimum filter length");
  }

  const FilterPyramid pyramid = build_pyramid(series, config.min_filter_length);
  const double threshold = config.spread_threshold();

  TransientReport report;
  report.strategy_used = config.candidate_strategy;
  for (std::size_t k = 1; k < pyramid.levels.size(); ++k) {
    report.levels.push_back(detect_on_level(pyramid.levels[k], threshold));
  }

  const std::span<const double> times = series.times();
  std::size_t cut = 0;
  switch (config.candidate_strategy) {
    case CandidateStrategy::FinestLevel:
      cut = floor_index(times, report.levels.front().t_min);
      break;
    case CandidateStrategy::LastLevel:
      cut = floor_index(times, report.levels.back().t_min);
      break;
    case CandidateStrategy::MajorityVote: {
      std::map<std::size_t, std::size_t> votes;
      for (const LevelDetection& level : report.levels) ++votes[nearest_index(times, level.t_min)];
      std::size_t best_count = 0;
      for (const auto& [index, count] : votes) {  // ascending index: ties keep the earliest
        if (count > best_count) {
          best_count = count;
          cut = index;
        }
      }
      break;
    }
  }

  report.cut_index = cut;
  report.t_cut = times[cut];
  report.steady_fraction = static_cast<double>(n - cut) / static_cast<double>(n);
  return report;
}

}  // namespace steadycheck

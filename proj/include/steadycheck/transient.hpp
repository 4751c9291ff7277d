#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "steadycheck/core.hpp"
#include "steadycheck/fractional_filter.hpp"
#include "steadycheck/reverse_stats.hpp"

namespace steadycheck {

struct CandidateMinimum {
  std::size_t level_index = 0;
  std::size_t index_in_level = 0;
  double rmse_value = 0.0;
  double local_spread = 0.0;
  bool validated = false;
  double mapped_time = 0.0;
};

// Outcome of the minimum search on one filtered level.
struct LevelDetection {
  std::size_t level_index = 0;
  std::size_t length = 0;
  std::vector<CandidateMinimum> candidates;  // every local minimum, validated or not
  std::size_t selected_index = 0;            // i* within the level
  bool selected_from_validated = false;      // false: global-minimum fallback
  double t_min = 0.0;
};

struct TransientReport {
  double t_cut = 0.0;
  std::size_t cut_index = 0;  // first steady sample, 0-based
  std::vector<LevelDetection> levels;
  CandidateStrategy strategy_used = CandidateStrategy::FinestLevel;
  double steady_fraction = 1.0;

  std::size_t steady_length(std::size_t n) const { return n - cut_index; }
};

// Interior indices i with rev_sem[i] < rev_sem[i-1] and rev_sem[i] <= rev_sem[i+1].
// Strict on the left and weak on the right, so a plateau yields its first
// index only. Throws CurveTooShort if fewer than 3 entries.
std::vector<std::size_t> find_local_minima(std::span<const double> rev_sem);

// Range of level_values over {i-1, i, i+1}.
double local_spread(std::span<const double> level_values, std::size_t i);

// Indices from `minima` whose local spread exceeds `threshold`.
std::vector<std::size_t> validate_candidates(std::span<const std::size_t> minima,
                                             std::span<const double> level_values,
                                             double threshold);

// Minimum search on one level: local minima, spread validation, then the
// lowest-RMSE validated minimum, or the global minimum of the curve when none
// validate (ties resolve to the earliest index).
LevelDetection detect_on_level(const FilterLevel& level, double threshold);

// Runs the search on every filtered level of the pyramid and reduces the
// per-level t_min values to a cutoff according to config.candidate_strategy.
// Throws SeriesTooShort for N < kMinDetectionLength.
TransientReport detect_transient(const TimeSeries& series, const AnalysisConfig& config);

}  // namespace steadycheck

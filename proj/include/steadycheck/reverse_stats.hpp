#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "steadycheck/core.hpp"

namespace steadycheck {

// Suffix statistics of a series. rev_mean[i] is the mean of x[i..N-1];
// rev_sem[i] is the standard error of that mean for i < N-1. The final
// suffix holds one sample and has no standard error, so rev_sem is one
// entry shorter than rev_mean.
struct RmseCurve {
  std::vector<double> rev_mean;
  std::vector<double> rev_sem;
  std::size_t source_length = 0;
};

// Single backward pass with a Welford-style update, so large offsets do not
// cancel against small fluctuations. Throws SeriesTooShort when N < 2.
RmseCurve reverse_cumulative_stats(std::span<const double> values);

inline RmseCurve reverse_cumulative_stats(const TimeSeries& series) {
  return reverse_cumulative_stats(series.values());
}

}  // namespace steadycheck

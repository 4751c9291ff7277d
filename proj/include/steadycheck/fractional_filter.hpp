#pragma once

#include <cstddef>
#include <vector>

#include "steadycheck/core.hpp"

namespace steadycheck {

struct FilterLevel {
  std::vector<double> values;
  std::vector<double> times;
  std::size_t level_index = 0;

  std::size_t size() const noexcept { return values.size(); }
};

struct FilterPyramid {
  // levels[0] is the unfiltered input; lengths strictly decrease.
  std::vector<FilterLevel> levels;
};

// Length of the level produced from one of length h: h/2 for even h,
// (h+1)/2 for odd h.
constexpr std::size_t coarser_length(std::size_t h) noexcept { return (h + 1) / 2; }

// One coarsening step. The h input samples are unit-width cells; the output
// has h' = coarser_length(h) cells of width h/h' and each output sample is the
// overlap-weighted mean of the cells it covers. Times use the same weights.
// Even h reduces to pairwise averaging. Throws LevelTooShort when h < 2.
FilterLevel filter_once(const FilterLevel& level);

// Level 0 plus successive coarsenings until the length is at most
// max(min_filter_length, 2). Throws SeriesTooShort when N < min_filter_length.
FilterPyramid build_pyramid(const TimeSeries& series, std::size_t min_filter_length);

}  // namespace steadycheck

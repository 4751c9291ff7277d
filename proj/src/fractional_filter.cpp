#include "steadycheck/fractional_filter.hpp"

#include <algorithm>

namespace steadycheck {

FilterLevel filter_once(const FilterLevel& level) {
  const std::size_t h = level.size();
  if (h < 2) throw Error(ErrorCode::LevelTooShort, "filter_once needs at least 2 samples");
  if (level.times.size() != h) {
    throw Error(ErrorCode::MismatchedLengths, "filter level has mismatched value/time lengths");
  }

  const std::size_t out_len = coarser_length(h);
  FilterLevel out;
  out.level_index = level.level_index + 1;
  out.values.resize(out_len);
  out.times.resize(out_len);

  // Work in units of 1/out_len of an input cell: input cell c spans
  // [c*out_len, (c+1)*out_len) and output bin j spans [j*h, (j+1)*h), so
  // every overlap is an exact integer.
  const double bin_width = static_cast<double>(h);
  for (std::size_t j = 0; j < out_len; ++j) {
    const std::size_t lo = j * h;
    const std::size_t hi = lo + h;
    const std::size_t first = lo / out_len;
    const std::size_t last = std::min(h - 1, (hi - 1) / out_len);

    // Accumulate deviations from the first covered cell so constant input
    // reproduces exactly, then clamp to the covered range against rounding.
    const double v0 = level.values[first];
    const double t0 = level.times[first];
    double dv = 0.0;
    double dt = 0.0;
    double vmin = v0, vmax = v0, tmin = t0, tmax = t0;
    for (std::size_t c = first; c <= last; ++c) {
      const std::size_t cell_lo = c * out_len;
      const std::size_t cell_hi = cell_lo + out_len;
      const std::size_t overlap = std::min(hi, cell_hi) - std::max(lo, cell_lo);
      const double w = static_cast<double>(overlap) / bin_width;
      dv += w * (level.values[c] - v0);
      dt += w * (level.times[c] - t0);
      vmin = std::min(vmin, level.values[c]);
      vmax = std::max(vmax, level.values[c]);
      tmin = std::min(tmin, level.times[c]);
      tmax = std::max(tmax, level.times[c]);
    }
    out.values[j] = std::clamp(v0 + dv, vmin, vmax);
    out.times[j] = std::clamp(t0 + dt, tmin, tmax);
  }
  return out;
}

FilterPyramid build_pyramid(const TimeSeries& series, std::size_t min_filter_length) {
  if (min_filter_length < 2) {
    throw Error(ErrorCode::InvalidConfig, "min_filter_length must be at least 2");
  }
  if (series.size() < min_filter_length) {
    throw Error(ErrorCode::SeriesTooShort, "series shorter than the minimum filter length");
  }
  const std::size_t floor_len = std::max<std::size_t>(min_filter_length, 2);

  FilterPyramid pyramid;
  FilterLevel base;
  base.values.assign(series.values().begin(), series.values().end());
  base.times.assign(series.times().begin(), series.times().end());
  pyramid.levels.push_back(std::move(base));

  while (pyramid.levels.back().size() > floor_len) {
    pyramid.levels.push_back(filter_once(pyramid.levels.back()));
  }
  return pyramid;
}

}  // namespace steadycheck

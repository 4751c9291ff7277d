#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "steadycheck/core.hpp"

namespace steadycheck {

// Entry point shared by the executable and the tests. `args` excludes the
// program name. Returns the process exit code: 0 converged, 1 not converged,
// 2 usage or data error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Writes level_<k>.csv for every pyramid level, candidates.csv, and
// rmse_filtered.csv (the fractional filter applied to the level-0 RMSE curve
// instead of the signal, for comparison) into `dir`.
void export_curves(const TimeSeries& series, const AnalysisConfig& config,
                   const std::filesystem::path& dir);

// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace steadycheck

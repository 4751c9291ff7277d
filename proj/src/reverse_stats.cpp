#include "steadycheck/reverse_stats.hpp"

#include <cmath>

namespace steadycheck {

RmseCurve reverse_cumulative_stats(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) {
    throw Error(ErrorCode::SeriesTooShort, "reverse statistics need at least 2 samples");
  }

  RmseCurve curve;
  curve.source_length = n;
  curve.rev_mean.resize(n);
  curve.rev_sem.resize(n - 1);

  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations from the running suffix mean
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = n - 1 - k;
    const double count = static_cast<double>(k + 1);
    const double delta = values[i] - mean;
    mean += delta / count;
    m2 += delta * (values[i] - mean);
    curve.rev_mean[i] = mean;
    if (k > 0) {
      const double variance = std::max(m2, 0.0) / (count - 1.0);
      curve.rev_sem[i] = std::sqrt(variance / count);
    }
  }
  return curve;
}

}  // namespace steadycheck

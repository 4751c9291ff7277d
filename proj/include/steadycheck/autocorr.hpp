#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "steadycheck/core.hpp"

namespace steadycheck {

// Sample autocorrelation rho[k] for k = 0..N-1, each lag normalised by its
// own pair count (N-k) and the sample variance (divisor N-1).
struct AcfEstimate {
  std::vector<double> rho;
  double sample_mean = 0.0;
  double sample_variance = 0.0;
  std::size_t segment_length = 0;
};

struct EffectiveSampleSize {
  double n_eff = 0.0;             // clamped to [1, N]
  double raw_denominator = 0.0;   // 1 + 2 sum (N-k)/N rho_k, unclamped
  std::size_t truncation_lag = 0; // largest lag included in the sum
  bool clamped = false;
};

// Above this length the lag products come from an FFT instead of direct
// summation.
inline constexpr std::size_t kDirectAcfMaxLength = 4096;

// Throws SegmentTooShort (N < 4) or ZeroVariance (constant segment).
AcfEstimate acf(std::span<const double> segment);
inline AcfEstimate acf(const TimeSeries& segment) { return acf(segment.values()); }

// Direct O(N^2) evaluation regardless of length.
AcfEstimate acf_direct(std::span<const double> segment);
// FFT evaluation regardless of length.
AcfEstimate acf_fft(std::span<const double> segment);

EffectiveSampleSize effective_sample_size(const AcfEstimate& estimate, AcfTruncation truncation);

}  // namespace steadycheck

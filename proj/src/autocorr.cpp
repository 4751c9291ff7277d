#include "steadycheck/autocorr.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <memory>
#include <mutex>

namespace steadycheck {

namespace {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

Moments moments(std::span<const double> x) {
  if (x.size() < 4) throw Error(ErrorCode::SegmentTooShort, "ACF needs at least 4 samples");
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - mean;
    mean += d / static_cast<double>(i + 1);
    m2 += d * (x[i] - mean);
  }
  const double variance = m2 / static_cast<double>(x.size() - 1);
  if (!(variance > 0.0)) {
    throw Error(ErrorCode::ZeroVariance, "segment is constant; autocorrelation undefined");
  }
  return {mean, variance};
}

AcfEstimate finish(std::vector<double> lag_products, const Moments& m) {
  const std::size_t n = lag_products.size();
  AcfEstimate out;
  out.sample_mean = m.mean;
  out.sample_variance = m.variance;
  out.segment_length = n;
  out.rho = std::move(lag_products);
  out.rho[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    out.rho[k] /= static_cast<double>(n - k) * m.variance;
  }
  return out;
}

// The FFTW planner is not reentrant.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

std::size_t next_pow2(std::size_t v) {
  std::size_t p = 1;
  while (p < v) p <<= 1;
  return p;
}

}  // namespace

AcfEstimate acf_direct(std::span<const double> segment) {
  const Moments m = moments(segment);
  const std::size_t n = segment.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = segment[i] - m.mean;

  std::vector<double> products(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    double s = 0.0;
    for (std::size_t t = 0; t + k < n; ++t) s += d[t] * d[t + k];
    products[k] = s;
  }
  return finish(std::move(products), m);
}

AcfEstimate acf_fft(std::span<const double> segment) {
  const Moments m = moments(segment);
  const std::size_t n = segment.size();
  const std::size_t len = next_pow2(2 * n);
  const std::size_t bins = len / 2 + 1;

  struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
  };
  std::unique_ptr<double, FftwFree> real(static_cast<double*>(fftw_malloc(sizeof(double) * len)));
  std::unique_ptr<fftw_complex, FftwFree> spec(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * bins)));

  fftw_plan forward;
  fftw_plan backward;
  {
    std::lock_guard lock(fftw_planner_mutex());
    forward = fftw_plan_dft_r2c_1d(static_cast<int>(len), real.get(), spec.get(), FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r_1d(static_cast<int>(len), spec.get(), real.get(), FFTW_ESTIMATE);
  }

  for (std::size_t i = 0; i < n; ++i) real.get()[i] = segment[i] - m.mean;
  for (std::size_t i = n; i < len; ++i) real.get()[i] = 0.0;
  fftw_execute(forward);
  for (std::size_t b = 0; b < bins; ++b) {
    auto& c = spec.get()[b];
    c[0] = c[0] * c[0] + c[1] * c[1];
    c[1] = 0.0;
  }
  fftw_execute(backward);

  std::vector<double> products(n);
  const double scale = 1.0 / static_cast<double>(len);
  for (std::size_t k = 0; k < n; ++k) products[k] = real.get()[k] * scale;

  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
  return finish(std::move(products), m);
}

AcfEstimate acf(std::span<const double> segment) {
  return segment.size() <= kDirectAcfMaxLength ? acf_direct(segment) : acf_fft(segment);
}

EffectiveSampleSize effective_sample_size(const AcfEstimate& estimate, AcfTruncation truncation) {
  const std::size_t n = estimate.segment_length;
  if (n < 2 || estimate.rho.size() != n) {
    throw Error(ErrorCode::DomainError, "effective_sample_size: malformed ACF estimate");
  }
  const double nd = static_cast<double>(n);

  EffectiveSampleSize out;
  double sum = 0.0;
  std::size_t lag = 0;
  for (std::size_t k = 1; k < n; ++k) {
    if (truncation == AcfTruncation::FirstNegative && estimate.rho[k] < 0.0) break;
    sum += (nd - static_cast<double>(k)) / nd * estimate.rho[k];
    lag = k;
  }
  out.truncation_lag = lag;
  out.raw_denominator = 1.0 + 2.0 * sum;

  // A denominator at or below zero leaves the estimator undefined; treat it
  // like negative correlation and cap at N.
  double value = out.raw_denominator > 0.0 ? nd / out.raw_denominator : nd;
  if (out.raw_denominator <= 0.0 || value > nd) {
    value = nd;
    out.clamped = true;
  } else if (value < 1.0) {
    value = 1.0;
    out.clamped = true;
  }
  out.n_eff = value;
  return out;
}

}  // namespace steadycheck

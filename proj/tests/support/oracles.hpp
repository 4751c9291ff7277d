#pragma once

// Brute-force reference implementations used only by the tests. Each one
// evaluates the defining formula directly, with no shared code from src/.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

namespace oracle {

inline std::vector<double> random_series(std::mt19937_64& rng, std::size_t n, double offset = 0.0,
                                         double scale = 1.0) {
  std::normal_distribution<double> z(0.0, 1.0);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> x(n);
  const double drift = u(rng);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = offset + scale * (z(rng) + drift * std::exp(-static_cast<double>(i) / 50.0));
  }
  return x;
}

// Mean and standard error of every suffix x[i..N-1], two-pass per suffix.
struct SuffixStats {
  std::vector<double> mean;
  std::vector<double> sem;
};

inline SuffixStats suffix_stats(const std::vector<double>& x) {
  const std::size_t n = x.size();
  SuffixStats out;
  for (std::size_t i = 0; i < n; ++i) {
    const double m = static_cast<double>(n - i);
    long double sum = 0.0L;
    for (std::size_t j = i; j < n; ++j) sum += x[j];
    const long double mean = sum / m;
    out.mean.push_back(static_cast<double>(mean));
    if (i + 1 < n) {
      long double ss = 0.0L;
      for (std::size_t j = i; j < n; ++j) ss += (x[j] - mean) * (x[j] - mean);
      out.sem.push_back(static_cast<double>(std::sqrt(ss / (m - 1.0L)) / std::sqrt(static_cast<long double>(m))));
    }
  }
  return out;
}

// Fine resampling: each unit input cell is split into 2*h' slices and each
// output bin of width h/h' collects exactly 2*h slices.
inline std::vector<double> resample(const std::vector<double>& x) {
  const std::size_t h = x.size();
  const std::size_t hp = (h + 1) / 2;
  std::vector<double> fine;
  for (double v : x) fine.insert(fine.end(), 2 * hp, v);
  std::vector<double> out(hp, 0.0);
  const std::size_t per_bin = fine.size() / hp;
  for (std::size_t j = 0; j < hp; ++j) {
    long double s = 0.0L;
    for (std::size_t k = j * per_bin; k < (j + 1) * per_bin; ++k) s += fine[k];
    out[j] = static_cast<double>(s / per_bin);
  }
  return out;
}

// Autocorrelation with per-lag pair counts and unbiased variance; lag 0 is
// 1 by definition.
inline std::vector<double> acf(const std::vector<double>& x) {
  const std::size_t n = x.size();
  long double mean = 0.0L;
  for (double v : x) mean += v;
  mean /= n;
  long double var = 0.0L;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= (n - 1);
  std::vector<double> rho(n);
  for (std::size_t k = 0; k < n; ++k) {
    long double c = 0.0L;
    for (std::size_t i = 0; i + k < n; ++i) c += (x[i] - mean) * (x[i + k] - mean);
    rho[k] = static_cast<double>(c / (n - k) / var);
  }
  rho[0] = 1.0;
  return rho;
}

inline std::vector<std::size_t> local_minima(const std::vector<double>& c) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < c.size(); ++i) {
    const bool left = c[i] < c[i - 1];
    if (left && c[i] <= c[i + 1]) out.push_back(i);
  }
  return out;
}

inline std::size_t argmin_earliest(const std::vector<double>& c) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i] < c[best]) best = i;
  }
  return best;
}

}  // namespace oracle

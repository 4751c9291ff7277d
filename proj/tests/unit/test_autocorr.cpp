#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "steadycheck/autocorr.hpp"
#include "steadycheck/synth.hpp"

using namespace steadycheck;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<double> alternating(std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = (i % 2 == 0) ? 1.0 : -1.0;
  return x;
}

std::vector<double> ar1(double phi, std::size_t n, std::uint64_t seed) {
  SignalSpec s;
  s.kind = SignalKind::Ar1;
  s.n = n;
  s.seed = seed;
  s.mean = 0.0;
  s.sd = 1.0;
  s.phi = phi;
  const TimeSeries t = generate(s);
  return {t.values().begin(), t.values().end()};
}

}  // namespace

TEST_CASE("lag zero is one", "[autocorr]") {
  std::mt19937_64 rng(1);
  const AcfEstimate e = acf(oracle::random_series(rng, 100));
  REQUIRE(e.rho.size() == 100);
  CHECK_THAT(e.rho[0], WithinAbs(1.0, 1e-14));
  CHECK(e.segment_length == 100);
}

TEST_CASE("alternating series closed form", "[autocorr]") {
  for (std::size_t n : {4u, 10u, 101u, 5000u}) {
    const std::vector<double> x = alternating(n);
    const AcfEstimate e = acf(x);
    const double mean = (n % 2 == 0) ? 0.0 : 1.0 / n;
    CHECK_THAT(e.sample_mean, WithinAbs(mean, 1e-15));
    if (n % 2 == 0) CHECK_THAT(e.rho[1], WithinRel(-(n - 1.0) / n, 1e-12));
    const std::vector<double> ref = oracle::acf(x);
    for (std::size_t k = 0; k < n; k += 1 + n / 50) CHECK_THAT(e.rho[k], WithinAbs(ref[k], 1e-9));

    const EffectiveSampleSize ess = effective_sample_size(e, AcfTruncation::Full);
    CHECK(ess.clamped);
    CHECK(ess.n_eff <= static_cast<double>(n));
  }
  // Truncating at the first negative lag drops rho_1 itself.
  const EffectiveSampleSize fn = effective_sample_size(acf(alternating(100)), AcfTruncation::FirstNegative);
  CHECK(fn.raw_denominator == 1.0);
  CHECK(fn.truncation_lag == 0);
  CHECK(fn.n_eff == 100.0);
}

TEST_CASE("white noise has a flat autocorrelation", "[autocorr]") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<double> x(10000);
    for (double& v : x) v = z(rng);
    const AcfEstimate e = acf(x);
    for (std::size_t k = 1; k <= 20; ++k) CHECK(std::fabs(e.rho[k]) < 0.05);
  }
}

TEST_CASE("uncorrelated lags give the full sample count", "[autocorr]") {
  AcfEstimate e;
  e.segment_length = 50;
  e.rho.assign(50, 0.0);
  e.rho[0] = 1.0;
  e.sample_variance = 1.0;
  for (auto mode : {AcfTruncation::Full, AcfTruncation::FirstNegative}) {
    const EffectiveSampleSize ess = effective_sample_size(e, mode);
    CHECK(ess.n_eff == 50.0);
    CHECK(ess.raw_denominator == 1.0);
    CHECK_FALSE(ess.clamped);
  }
}

TEST_CASE("AR(1) effective sample size under first-negative truncation", "[autocorr]") {
  // Individual realizations scatter by roughly 15% around the analytic value,
  // so the 30% band is applied to the ensemble mean and most single seeds.
  const double phi = 0.9;
  const double target = 10000.0 * (1.0 - phi) / (1.0 + phi);
  double sum = 0.0;
  int within = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const double n_eff =
        effective_sample_size(acf(ar1(phi, 10000, seed)), AcfTruncation::FirstNegative).n_eff;
    within += std::fabs(n_eff / target - 1.0) <= 0.3 ? 1 : 0;
    sum += n_eff;
  }
  CHECK_THAT(sum / 20.0, WithinRel(target, 0.3));
  CHECK(within >= 15);
}

TEST_CASE("full-lag sum matches the direct oracle", "[autocorr]") {
  std::mt19937_64 rng(17);
  for (std::size_t n : {4u, 9u, 300u, 1500u}) {
    const std::vector<double> x = oracle::random_series(rng, n);
    const std::vector<double> ref = oracle::acf(x);
    double expected = 1.0;
    for (std::size_t k = 1; k < n; ++k) expected += 2.0 * (n - k) / static_cast<double>(n) * ref[k];
    const EffectiveSampleSize ess = effective_sample_size(acf(x), AcfTruncation::Full);
    CHECK_THAT(ess.raw_denominator, WithinAbs(expected, 1e-9));
    CHECK(ess.truncation_lag == n - 1);
  }
}

TEST_CASE("direct and FFT routes agree", "[autocorr]") {
  std::mt19937_64 rng(23);
  for (std::size_t n : {4u, 5u, 127u, 1024u, 3001u}) {
    const std::vector<double> x = oracle::random_series(rng, n, 2.0, 0.1);
    const AcfEstimate d = acf_direct(x);
    const AcfEstimate f = acf_fft(x);
    for (std::size_t k = 0; k < n; ++k) REQUIRE_THAT(f.rho[k], WithinAbs(d.rho[k], 1e-9));
  }
  // Above the switch-over length acf() takes the FFT route.
  const std::vector<double> big = ar1(0.5, 6000, 2);
  const AcfEstimate e = acf(big);
  const AcfEstimate d = acf_direct(big);
  for (std::size_t k = 0; k < 200; ++k) CHECK_THAT(e.rho[k], WithinAbs(d.rho[k], 1e-9));
}

TEST_CASE("offset and scale invariance", "[autocorr]") {
  std::mt19937_64 rng(29);
  const std::vector<double> x = oracle::random_series(rng, 400);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = 1e4 + 250.0 * x[i];
  const AcfEstimate a = acf(x);
  const AcfEstimate b = acf(y);
  for (std::size_t k = 0; k < 40; ++k) CHECK_THAT(b.rho[k], WithinAbs(a.rho[k], 1e-8));
}

TEST_CASE("raising one positive lag lowers n_eff", "[autocorr]") {
  std::mt19937_64 rng(31);
  AcfEstimate e = acf(oracle::random_series(rng, 300));
  const EffectiveSampleSize before = effective_sample_size(e, AcfTruncation::Full);
  e.rho[5] += 0.01;
  const EffectiveSampleSize after = effective_sample_size(e, AcfTruncation::Full);
  CHECK(after.raw_denominator > before.raw_denominator);
}

TEST_CASE("stronger correlation lowers the effective sample size", "[autocorr]") {
  double previous = 1e9;
  for (double phi : {0.0, 0.3, 0.6, 0.9}) {
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      total += effective_sample_size(acf(ar1(phi, 5000, seed)), AcfTruncation::FirstNegative).n_eff;
    }
    CHECK(total < previous);
    previous = total;
  }
}

TEST_CASE("autocorrelation errors", "[autocorr]") {
  CHECK_THROWS_AS(acf(std::vector<double>{1, 2, 3}), Error);
  CHECK_THROWS_AS(acf(std::vector<double>(10, 2.0)), Error);
}

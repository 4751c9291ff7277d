#include "steadycheck/student_t.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "steadycheck/core.hpp"

namespace steadycheck {

namespace {

// Tail of Stirling's series for log Gamma(z), z >= 20.
double stirling_correction(double z) {
  const double z2 = z * z;
  return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * z2)) / z2) / z2) / z;
}

// log Gamma(a + b) - log Gamma(a) for large a.
double log_gamma_shift(double a, double b) {
  return (a - 0.5) * std::log1p(b / a) + b * std::log(a + b) - b +
         stirling_correction(a + b) - stirling_correction(a);
}

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 100000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double md = m;
    const double m2 = 2.0 * md;
    double aa = md * (b - md) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + md) * (qab + md) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double log_beta(double a, double b) {
  if (a < b) std::swap(a, b);
  if (a >= 20.0) {
    if (b >= 20.0) {
      // Both large: 0.5 log(2 pi) + (a-0.5) log a + (b-0.5) log b - (a+b-0.5) log(a+b)
      const double s = a + b;
      return 0.5 * std::log(2.0 * std::numbers::pi) + (a - 0.5) * std::log(a / s) +
             (b - 0.5) * std::log(b / s) - 0.5 * std::log(s) + stirling_correction(a) +
             stirling_correction(b) - stirling_correction(s);
    }
    return std::lgamma(b) - log_gamma_shift(a, b);
  }
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double incomplete_beta(double a, double b, double x, double y) {
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return 1.0;
  const double log_x = x > 0.5 ? std::log1p(-y) : std::log(x);
  const double log_y = y > 0.5 ? std::log1p(-x) : std::log(y);
  const double front = std::exp(a * log_x + b * log_y - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_fraction(a, b, x) / a;
  return 1.0 - front * beta_fraction(b, a, y) / b;
}

double student_t_pdf(double t, double nu) {
  const double log_pdf =
      -log_beta(0.5 * nu, 0.5) - 0.5 * std::log(nu) - 0.5 * (nu + 1.0) * std::log1p(t * t / nu);
  return std::exp(log_pdf);
}

double student_t_upper_tail(double t, double nu) {
  if (t < 0.0) return 1.0 - student_t_upper_tail(-t, nu);
  const double t2 = t * t;
  const double x = nu / (nu + t2);
  const double y = t2 / (nu + t2);
  return 0.5 * incomplete_beta(0.5 * nu, 0.5, x, y);
}

double student_t_cdf(double t, double nu) {
  return t >= 0.0 ? 1.0 - student_t_upper_tail(t, nu) : student_t_upper_tail(-t, nu);
}

double t_quantile(double q, double nu) {
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorCode::DomainError, "t_quantile: q must lie in (0, 1)");
  if (!(nu > 0.0) || std::isnan(nu)) {
    throw Error(ErrorCode::DomainError, "t_quantile: degrees of freedom must be positive");
  }
  if (q == 0.5) return 0.0;

  // Solve P(T > t) = p on t > 0; both 1-q and q are exact here.
  const bool upper = q > 0.5;
  const double p = upper ? 1.0 - q : q;

  double lo = 0.0;
  double hi = 1.0;
  while (student_t_upper_tail(hi, nu) > p) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) return upper ? hi : -hi;
  }

  // Newton on the tail with a bisection safeguard.
  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = student_t_upper_tail(t, nu) - p;
    if (f > 0.0) lo = t; else hi = t;
    if (f == 0.0) break;
    const double slope = -student_t_pdf(t, nu);
    double next = t - f / slope;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    if (std::fabs(next - t) <= 4.0 * std::numeric_limits<double>::epsilon() * t) {
      t = next;
      break;
    }
    t = next;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
  }
  return upper ? t : -t;
}

}  // namespace steadycheck

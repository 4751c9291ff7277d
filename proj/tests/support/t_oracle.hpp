#pragma once

// Student-t quantile by quadrature of the density and bracketing root
// finding. Shares nothing with the library's continued-fraction route.

#include <cmath>
#include <cstdint>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/roots.hpp>

namespace oracle {

inline double t_density_norm(double nu) {
  // Gamma((nu+1)/2) / (sqrt(nu pi) Gamma(nu/2))
  const double ratio = 1.0 / boost::math::tgamma_delta_ratio(nu / 2.0, 0.5);
  return ratio / std::sqrt(nu * M_PI);
}

inline double t_cdf_quadrature(double t, double nu) {
  const double c = t_density_norm(nu);
  auto pdf = [&](double x) { return c * std::pow(1.0 + x * x / nu, -(nu + 1.0) / 2.0); };
  const double area = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(pdf, 0.0, t, 15, 1e-15);
  return 0.5 + area;
}

inline double t_quantile_quadrature(double q, double nu) {
  auto f = [&](double t) { return t_cdf_quadrature(t, nu) - q; };
  double hi = 1.0;
  while (f(hi) < 0.0) hi *= 2.0;
  std::uintmax_t iterations = 500;
  const auto bracket =
      boost::math::tools::toms748_solve(f, 0.0, hi, boost::math::tools::eps_tolerance<double>(50), iterations);
  return 0.5 * (bracket.first + bracket.second);
}

}  // namespace oracle

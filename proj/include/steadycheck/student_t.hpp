#pragma once

namespace steadycheck {

// log B(a, b) for a, b > 0, accurate when one argument is large.
double log_beta(double a, double b);

// Regularized incomplete beta I_x(a, b). `y` must equal 1 - x; passing it
// separately keeps precision when x is close to 1.
double incomplete_beta(double a, double b, double x, double y);

// Student's t with real-valued degrees of freedom nu > 0.
double student_t_pdf(double t, double nu);
double student_t_cdf(double t, double nu);
// P(T > t) computed without forming 1 - cdf.
double student_t_upper_tail(double t, double nu);

// Inverse CDF. Throws Error{DomainError} unless 0 < q < 1 and nu > 0.
double t_quantile(double q, double nu);

}  // namespace steadycheck

#pragma once

namespace mixeff {

// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
// Throws DomainError outside that range.
double regularized_incomplete_beta(double a, double b, double x);

// log B(a, b), stable when one argument is large and the other small.
double log_beta(double a, double b);

// P(T <= t) for Student's t with df > 0 degrees of freedom.
double student_t_cdf(double t, double df);

// P(T > t).
double student_t_sf(double t, double df);

}  // namespace mixeff

#pragma once

namespace netfail {

double normal_pdf(double x);

// Standard normal distribution function.
double normal_cdf(double x);

// Upper tail 1 - Phi(x), evaluated directly so it keeps full relative
// accuracy far into the tail (down to about Phi-bar(37)).
double normal_sf(double x);

// Inverse of normal_cdf. Throws std::domain_error unless 0 < p < 1.
double normal_quantile(double p);

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x).
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// P{R > r} for R the norm of a d-dimensional standard normal vector,
// i.e. Q(d/2, r^2/2). Accepts r = +inf (returns 0).
double chi_survival(int d, double r);

// P{R <= r}, the complement of chi_survival.
double chi_cdf(int d, double r);

// Smallest r with chi_survival(d, r) below `level` (bisection on the
// monotone survival function).
double chi_radius_for_survival(int d, double level);

}  // namespace netfail

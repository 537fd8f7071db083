#include "netfail/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace netfail {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

// ln prefactor x^a e^{-x} / Gamma(a) shared by the series and the continued
// fraction.
double log_gamma_prefactor(double a, double x) {
  return a * std::log(x) - x - std::lgamma(a);
}

double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int k = 1; k < 10000; ++k) {
    term *= x / (a + k);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-17) break;
  }
  return sum * std::exp(log_gamma_prefactor(a, x));
}

// Modified Lentz evaluation of the continued fraction for Q(a, x), x > a + 1.
double gamma_q_continued_fraction(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(log_gamma_prefactor(a, x)) * h;
}

void check_gamma_args(double a, double x) {
  if (!(a > 0.0)) throw std::domain_error("incomplete gamma: a must be > 0");
  if (!(x >= 0.0)) throw std::domain_error("incomplete gamma: x must be >= 0");
}

}  // namespace

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double normal_sf(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

// Wichura, Algorithm AS 241 (PPND16), followed by one Halley step.
double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("normal_quantile: p must lie in (0, 1)");
  }
  const double q = p - 0.5;
  double x;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    x = q *
        (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
              6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
            1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
          1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
        (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
              3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
            5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
          4.2313330701600911252e+1) * r + 1.0);
  } else {
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    if (r <= 5.0) {
      r -= 1.6;
      x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
              3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
            4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
          (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
              6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
            2.05319162663775882187e+0) * r + 1.0);
    } else {
      r -= 5.0;
      x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
              2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
            5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
          (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
              1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
            5.99832206555887937690e-1) * r + 1.0);
    }
    if (q < 0.0) x = -x;
  }
  // Halley refinement against the tail-accurate side of the distribution.
  const double pdf = normal_pdf(x);
  if (pdf > 0.0) {
    const double err = p < 0.5 ? normal_cdf(x) - p : (1.0 - p) - normal_sf(x);
    const double u = err / pdf;
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

double regularized_gamma_p(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_continued_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_continued_fraction(a, x);
}

double chi_survival(int d, double r) {
  if (d <= 0) throw std::domain_error("chi_survival: d must be positive");
  if (std::isnan(r) || r < 0.0) {
    throw std::domain_error("chi_survival: r must be >= 0");
  }
  if (r == 0.0) return 1.0;
  if (std::isinf(r)) return 0.0;
  return regularized_gamma_q(0.5 * d, 0.5 * r * r);
}

double chi_cdf(int d, double r) {
  if (d <= 0) throw std::domain_error("chi_cdf: d must be positive");
  if (std::isnan(r) || r < 0.0) throw std::domain_error("chi_cdf: r must be >= 0");
  if (r == 0.0) return 0.0;
  if (std::isinf(r)) return 1.0;
  return regularized_gamma_p(0.5 * d, 0.5 * r * r);
}

double chi_radius_for_survival(int d, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::domain_error("chi_radius_for_survival: level must lie in (0, 1)");
  }
  double lo = 0.0;
  double hi = 1.0;
  while (chi_survival(d, hi) >= level) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (chi_survival(d, mid) >= level ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace netfail

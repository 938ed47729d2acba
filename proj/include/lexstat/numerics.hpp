#pragma once

#include <cmath>

namespace lexstat {

inline double log_factorial(double n) { return std::lgamma(n + 1.0); }

inline double log_binomial(double n, double k) {
  if (k < 0 || k > n) return -INFINITY;
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

// log of the Beta function B(a, b).
inline double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Regularized upper incomplete gamma Q(a, x); used for chi-square p-values.
double gamma_q(double a, double x);

// Survival function of a chi-square distribution with k degrees of freedom.
inline double chi_square_sf(double statistic, double dof) {
  return gamma_q(dof / 2.0, statistic / 2.0);
}

// Root of fn on [lo, hi] by bisection; requires a sign change.
double bisect(double (*fn)(double, const void*), const void* ctx, double lo,
              double hi, double tol);

constexpr double kLn2 = 0.6931471805599453094172321214581766;

inline double log2_of(double x) { return std::log(x) / kLn2; }

// x * log2(x) with the 0 * log 0 := 0 convention.
inline double xlog2x(double x) { return x > 0.0 ? x * log2_of(x) : 0.0; }

}  // namespace lexstat

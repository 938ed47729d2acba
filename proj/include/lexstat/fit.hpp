#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace lexstat {

// Result of a straight-line fit in log-log coordinates (natural logs).
// `exponent` carries the sign convention of the caller: decaying laws such as
// n(r) ~ r^-z report z positive, growing laws report the slope as-is.
struct PowerLawFit {
  double exponent = 0.0;
  double intercept = 0.0;  // fitted ln(y) at ln(x) = 0
  double window_lo = 0.0;
  double window_hi = 0.0;
  double rms_residual = 0.0;
  std::size_t n_points = 0;
};

// Ordinary least squares of ln(y) on ln(x) over points with window_lo <= x <=
// window_hi and y > 0. Throws PreconditionError when fewer than 3 points fall
// inside the window. The returned exponent is the raw slope.
PowerLawFit fit_loglog(std::span<const double> x, std::span<const double> y,
                       double window_lo, double window_hi);

// Log-spaced grid of distinct integers in [lo, hi], about `per_decade` points
// per decade. Always contains lo and hi.
std::vector<std::size_t> log_grid(std::size_t lo, std::size_t hi,
                                  std::size_t per_decade = 20);

// Minimizes fn over `dim` coordinates by Nelder-Mead; used by the small
// nonlinear fits. Returns the best point found; `*final_value` gets its value.
std::vector<double> nelder_mead(
    const std::vector<double>& start, double step,
    double (*fn)(const std::vector<double>&, const void*), const void* ctx,
    std::size_t max_iter, double tol, double* final_value);

}  // namespace lexstat

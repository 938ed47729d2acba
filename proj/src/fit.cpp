#include "lexstat/fit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lexstat/errors.hpp"

namespace lexstat {

PowerLawFit fit_loglog(std::span<const double> x, std::span<const double> y,
                       double window_lo, double window_hi) {
  if (x.size() != y.size()) {
    throw PreconditionError("fit_loglog: size mismatch");
  }
  if (!(window_lo < window_hi)) {
    throw PreconditionError("fit_loglog: window_lo must be < window_hi");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < window_lo || x[i] > window_hi || !(x[i] > 0) || !(y[i] > 0)) {
      continue;
    }
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 3) {
    throw PreconditionError("fit_loglog: fewer than 3 points in window");
  }
  const double dn = static_cast<double>(n);
  const double denom = dn * sxx - sx * sx;
  if (denom == 0.0) {
    throw PreconditionError("fit_loglog: degenerate abscissae");
  }
  PowerLawFit fit;
  fit.exponent = (dn * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.exponent * sx) / dn;
  fit.window_lo = window_lo;
  fit.window_hi = window_hi;
  fit.n_points = n;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < window_lo || x[i] > window_hi || !(x[i] > 0) || !(y[i] > 0)) {
      continue;
    }
    const double r = std::log(y[i]) - (fit.intercept + fit.exponent * std::log(x[i]));
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / dn);
  return fit;
}

std::vector<std::size_t> log_grid(std::size_t lo, std::size_t hi,
                                  std::size_t per_decade) {
  if (lo < 1 || hi < lo) {
    throw PreconditionError("log_grid: need 1 <= lo <= hi");
  }
  std::vector<std::size_t> out;
  const double llo = std::log10(static_cast<double>(lo));
  const double lhi = std::log10(static_cast<double>(hi));
  const std::size_t npts =
      std::max<std::size_t>(2, static_cast<std::size_t>((lhi - llo) * per_decade) + 1);
  for (std::size_t k = 0; k < npts; ++k) {
    const double f = llo + (lhi - llo) * static_cast<double>(k) /
                               static_cast<double>(npts - 1);
    out.push_back(static_cast<std::size_t>(std::llround(std::pow(10.0, f))));
  }
  out.front() = lo;
  out.back() = hi;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> nelder_mead(const std::vector<double>& start, double step,
                                double (*fn)(const std::vector<double>&, const void*),
                                const void* ctx, std::size_t max_iter, double tol,
                                double* final_value) {
  const std::size_t dim = start.size();
  std::vector<std::vector<double>> simplex(dim + 1, start);
  for (std::size_t i = 0; i < dim; ++i) {
    simplex[i + 1][i] += step;
  }
  std::vector<double> val(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) {
    val[i] = fn(simplex[i], ctx);
  }
  std::vector<std::size_t> order(dim + 1);
  for (std::size_t it = 0; it < max_iter; ++it) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
    const std::size_t best = order[0], worst = order[dim], second = order[dim - 1];
    if (std::abs(val[worst] - val[best]) <=
        tol * (std::abs(val[best]) + std::abs(val[worst]) + 1e-300)) {
      break;
    }
    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[i][d];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    auto blend = [&](double t) {
      std::vector<double> p(dim);
      for (std::size_t d = 0; d < dim; ++d) {
        p[d] = centroid[d] + t * (simplex[worst][d] - centroid[d]);
      }
      return p;
    };
    std::vector<double> refl = blend(-1.0);
    const double frefl = fn(refl, ctx);
    if (frefl < val[order[0]]) {
      std::vector<double> exp_ = blend(-2.0);
      const double fexp = fn(exp_, ctx);
      if (fexp < frefl) {
        simplex[worst] = std::move(exp_);
        val[worst] = fexp;
      } else {
        simplex[worst] = std::move(refl);
        val[worst] = frefl;
      }
    } else if (frefl < val[second]) {
      simplex[worst] = std::move(refl);
      val[worst] = frefl;
    } else {
      std::vector<double> contr = blend(0.5);
      const double fcontr = fn(contr, ctx);
      if (fcontr < val[worst]) {
        simplex[worst] = std::move(contr);
        val[worst] = fcontr;
      } else {
        // shrink toward the best vertex
        for (std::size_t i = 0; i <= dim; ++i) {
          if (i == best) continue;
          for (std::size_t d = 0; d < dim; ++d) {
            simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
          }
          val[i] = fn(simplex[i], ctx);
        }
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i <= dim; ++i) {
    if (val[i] < val[best]) best = i;
  }
  if (final_value != nullptr) *final_value = val[best];
  return simplex[best];
}

}  // namespace lexstat

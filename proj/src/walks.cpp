#include "lexstat/walks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lexstat/errors.hpp"
#include "lexstat/zipf.hpp"

namespace lexstat {

WalkSignal WalkSignal::from_steps(std::vector<double> xi, std::string meta) {
  WalkSignal s;
  s.steps = std::move(xi);
  s.positions.resize(s.steps.size() + 1);
  s.positions[0] = 0.0;
  for (std::size_t t = 0; t < s.steps.size(); ++t) {
    s.positions[t + 1] = s.positions[t] + s.steps[t];
  }
  s.meta = std::move(meta);
  return s;
}

namespace {

void check_grid(std::size_t length, std::span<const std::size_t> grid,
                std::size_t factor) {
  if (grid.empty()) {
    throw PreconditionError("scale grid is empty");
  }
  if (*std::max_element(grid.begin(), grid.end()) * factor > length) {
    throw PreconditionError("scale grid exceeds sequence length");
  }
  if (*std::min_element(grid.begin(), grid.end()) < 2) {
    throw PreconditionError("scales must be >= 2");
  }
}

// Absolute central moments of the per-symbol window counts, summed over the
// alphabet: one curve per q over the t grid. Window starts advance by t/4.
// Both letter_walk_variance and holder_moments read their numbers from here,
// which makes D_2 and the diffusion exponent literally the same quantity.
std::vector<std::vector<double>> symbol_moment_curves(
    const SymbolSequence& seq, std::span<const int> q_list,
    std::span<const std::size_t> t_grid) {
  check_grid(seq.symbols.size(), t_grid, 2);
  for (int q : q_list) {
    if (q < 1) throw PreconditionError("holder_moments: q must be >= 1");
  }
  const std::size_t n = seq.symbols.size();
  const std::size_t a = seq.alphabet.size();
  std::vector<std::vector<double>> curves(q_list.size(),
                                          std::vector<double>(t_grid.size(), 0.0));
  // one symbol at a time keeps memory at O(n)
  std::vector<std::uint32_t> prefix(n + 1, 0);
  std::vector<double> counts;
  for (std::size_t k = 0; k < a; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      prefix[i + 1] = prefix[i] + (seq.symbols[i] == k ? 1u : 0u);
    }
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
      const std::size_t t = t_grid[ti];
      const std::size_t stride = std::max<std::size_t>(1, t / 4);
      const std::size_t windows = (n - t) / stride + 1;
      if (windows < 2) {
        throw PreconditionError("walks: too few windows at largest scale");
      }
      counts.resize(windows);
      double mean = 0;
      for (std::size_t w = 0; w < windows; ++w) {
        const std::size_t u = w * stride;
        counts[w] = static_cast<double>(prefix[u + t] - prefix[u]);
        mean += counts[w];
      }
      mean /= static_cast<double>(windows);
      for (std::size_t qi = 0; qi < q_list.size(); ++qi) {
        const int q = q_list[qi];
        double acc = 0;
        if (q == 2) {
          for (double c : counts) acc += (c - mean) * (c - mean);
        } else {
          for (double c : counts) acc += std::pow(std::abs(c - mean), q);
        }
        curves[qi][ti] += acc / static_cast<double>(windows);
      }
    }
  }
  return curves;
}

std::vector<double> as_doubles(std::span<const std::size_t> grid) {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = static_cast<double>(grid[i]);
  return out;
}

}  // namespace

std::vector<std::size_t> default_scale_grid(std::size_t length, std::size_t lo) {
  if (length / 8 <= lo) {
    throw PreconditionError("default_scale_grid: sequence too short");
  }
  return log_grid(lo, length / 8, 20);
}

HolderResult holder_moments(const SymbolSequence& seq, std::span<const int> q_list,
                            std::span<const std::size_t> t_grid) {
  const auto curves = symbol_moment_curves(seq, q_list, t_grid);
  const std::vector<double> ts = as_doubles(t_grid);
  HolderResult result;
  result.q.assign(q_list.begin(), q_list.end());
  for (const auto& curve : curves) {
    result.fits.push_back(fit_loglog(ts, curve, ts.front(), ts.back()));
  }
  return result;
}

VarianceCurve letter_walk_variance(const SymbolSequence& seq,
                                   std::span<const std::size_t> t_grid) {
  const int q2[] = {2};
  const auto curves = symbol_moment_curves(seq, q2, t_grid);
  VarianceCurve curve;
  curve.t = as_doubles(t_grid);
  curve.variance = curves[0];
  return curve;
}

PowerLawFit fit_variance_curve(const VarianceCurve& curve) {
  if (curve.t.size() < 3) {
    throw PreconditionError("fit_variance_curve: need >= 3 scales");
  }
  return fit_loglog(curve.t, curve.variance, curve.t.front(), curve.t.back());
}

WalkSignal rank_walk(const TokenizedText& text, std::uint32_t rank_lo,
                     std::uint32_t rank_hi) {
  if (text.tokens.empty()) {
    throw PreconditionError("rank_walk: empty text");
  }
  const OccurrenceTable table = occurrence_table(text);
  const std::vector<std::uint32_t> rank_of = table.ranks_by_id();
  std::vector<double> r;
  r.reserve(text.tokens.size());
  const bool filtered = rank_hi > rank_lo;
  for (std::uint32_t id : text.tokens) {
    const std::uint32_t rank = rank_of[id];
    if (filtered && (rank <= rank_lo || rank >= rank_hi)) continue;
    r.push_back(static_cast<double>(rank));
  }
  if (r.size() < 2) {
    throw DegenerateSignalError("rank_walk: fewer than 2 tokens after filtering");
  }
  double mean = std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());
  double var = 0;
  for (double x : r) var += (x - mean) * (x - mean);
  var /= static_cast<double>(r.size());
  if (var <= 0) {
    throw DegenerateSignalError("rank_walk: zero rank variance (single-word lexicon)");
  }
  const double inv_sd = 1.0 / std::sqrt(var);
  for (double& x : r) x = (x - mean) * inv_sd;
  std::string meta = "rank-walk:" + text.source_id;
  if (filtered) {
    meta += " ranks(" + std::to_string(rank_lo) + "," + std::to_string(rank_hi) + ")";
  }
  return WalkSignal::from_steps(std::move(r), std::move(meta));
}

RescaledRangeCurve hurst_rs_curve(const WalkSignal& signal,
                                  std::span<const std::size_t> tau_grid) {
  const std::size_t n = signal.steps.size();
  check_grid(n, tau_grid, 4);
  const std::vector<double>& y = signal.positions;
  RescaledRangeCurve curve;
  for (std::size_t tau : tau_grid) {
    const std::size_t stride = std::max<std::size_t>(1, tau / 4);
    double acc = 0;
    std::size_t used = 0;
    for (std::size_t t = 0; t + tau <= n; t += stride) {
      // detrended segment D(u) = y(t+u) - y(t) - (u/tau)(y(t+tau) - y(t))
      const double y0 = y[t];
      const double slope = (y[t + tau] - y0) / static_cast<double>(tau);
      double dmin = 0, dmax = 0;
      for (std::size_t u = 1; u <= tau; ++u) {
        const double d = y[t + u] - y0 - slope * static_cast<double>(u);
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
      }
      double s1 = 0, s2 = 0;
      for (std::size_t u = t; u < t + tau; ++u) {
        s1 += signal.steps[u];
        s2 += signal.steps[u] * signal.steps[u];
      }
      const double inv_tau = 1.0 / static_cast<double>(tau);
      const double var = s2 * inv_tau - (s1 * inv_tau) * (s1 * inv_tau);
      if (var <= 0) continue;  // flat window, skipped
      acc += (dmax - dmin) / std::sqrt(var);
      ++used;
    }
    if (used == 0) {
      throw DegenerateSignalError("hurst_rs: all windows degenerate at tau=" +
                                  std::to_string(tau));
    }
    curve.tau.push_back(static_cast<double>(tau));
    curve.mean_ratio.push_back(acc / static_cast<double>(used));
  }
  return curve;
}

PowerLawFit hurst_rs(const WalkSignal& signal, std::span<const std::size_t> tau_grid) {
  const RescaledRangeCurve curve = hurst_rs_curve(signal, tau_grid);
  return fit_loglog(curve.tau, curve.mean_ratio, curve.tau.front(), curve.tau.back());
}

PowerLawFit hurst_rs(const WalkSignal& signal) {
  const std::vector<std::size_t> grid = default_scale_grid(signal.steps.size());
  return hurst_rs(signal, grid);
}

FluctuationCurve dfa_curve(std::span<const double> series,
                           std::span<const std::size_t> box_grid) {
  const std::size_t n = series.size();
  check_grid(n, box_grid, 4);
  // integrated profile with the global mean removed
  std::vector<double> y(n);
  double mean = std::accumulate(series.begin(), series.end(), 0.0) /
                static_cast<double>(n);
  double acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += series[i] - mean;
    y[i] = acc;
  }
  FluctuationCurve curve;
  for (std::size_t s : box_grid) {
    const std::size_t boxes = n / s;
    double ss = 0;
    std::size_t segments = 0;
    // boxes taken from the start and again from the end, so the tail remainder
    // still contributes
    for (int dir = 0; dir < 2; ++dir) {
      for (std::size_t b = 0; b < boxes; ++b) {
        const std::size_t lo = dir == 0 ? b * s : n - (b + 1) * s;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < s; ++i) {
          const double x = static_cast<double>(i);
          sx += x;
          sy += y[lo + i];
          sxx += x * x;
          sxy += x * y[lo + i];
        }
        const double ds = static_cast<double>(s);
        const double denom = ds * sxx - sx * sx;
        const double slope = (ds * sxy - sx * sy) / denom;
        const double inter = (sy - slope * sx) / ds;
        for (std::size_t i = 0; i < s; ++i) {
          const double r = y[lo + i] - (inter + slope * static_cast<double>(i));
          ss += r * r;
        }
        ++segments;
      }
    }
    curve.s.push_back(static_cast<double>(s));
    curve.fluctuation.push_back(std::sqrt(ss / (static_cast<double>(segments) *
                                                static_cast<double>(s))));
  }
  return curve;
}

PowerLawFit dfa(std::span<const double> series, std::span<const std::size_t> box_grid) {
  const FluctuationCurve curve = dfa_curve(series, box_grid);
  return fit_loglog(curve.s, curve.fluctuation, curve.s.front(), curve.s.back());
}

PowerLawFit dfa(std::span<const double> series) {
  const std::vector<std::size_t> grid = default_scale_grid(series.size());
  return dfa(series, grid);
}

}  // namespace lexstat

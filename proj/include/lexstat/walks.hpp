#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lexstat/corpus.hpp"
#include "lexstat/fit.hpp"

namespace lexstat {

// A text mapped to a one-dimensional walk: standardized steps xi(t) and the
// cumulative positions y(t) = y(0) + sum xi.
struct WalkSignal {
  std::vector<double> steps;      // xi(t), t = 1..T
  std::vector<double> positions;  // y(t), t = 0..T with y(0) = 0
  std::string meta;

  static WalkSignal from_steps(std::vector<double> xi, std::string meta = "");
};

// sigma^2(t) of the per-symbol counting walks, summed over the alphabet.
// Averages run over window start positions with stride max(1, t/4).
struct VarianceCurve {
  std::vector<double> t;
  std::vector<double> variance;
};
VarianceCurve letter_walk_variance(const SymbolSequence& seq,
                                   std::span<const std::size_t> t_grid);

// Per-q log-log fits of sum_k <|y_k(t) - <y_k(t)>|^q> ~ t^(D_q). q = 2 runs
// through the same estimator path as letter_walk_variance, so D_2 equals the
// diffusion exponent by construction.
struct HolderResult {
  std::vector<int> q;
  std::vector<PowerLawFit> fits;  // D_q is fits[i].exponent
};
HolderResult holder_moments(const SymbolSequence& seq, std::span<const int> q_list,
                            std::span<const std::size_t> t_grid);

PowerLawFit fit_variance_curve(const VarianceCurve& curve);

// Word-rank walk: r(t) from the occurrence table, standardized to zero mean
// and unit variance. With rank_lo/rank_hi set, tokens whose rank falls outside
// the open interval (rank_lo, rank_hi) are removed before standardization.
WalkSignal rank_walk(const TokenizedText& text, std::uint32_t rank_lo = 0,
                     std::uint32_t rank_hi = 0);

// Rescaled-range estimate: mean over start positions of R(t,tau)/sigma(t,tau)
// per tau, then an OLS fit of log <R/sigma> on log tau. The range R is taken
// over the linearly detrended segment. Start positions advance by
// max(1, tau/4).
struct RescaledRangeCurve {
  std::vector<double> tau;
  std::vector<double> mean_ratio;
};
RescaledRangeCurve hurst_rs_curve(const WalkSignal& signal,
                                  std::span<const std::size_t> tau_grid);
PowerLawFit hurst_rs(const WalkSignal& signal, std::span<const std::size_t> tau_grid);
PowerLawFit hurst_rs(const WalkSignal& signal);  // default grid 16 .. T/8

// First-order detrended fluctuation analysis of a (step) series: integrate,
// split into boxes of size s from both ends, detrend each box linearly, and
// fit log F(s) on log s.
struct FluctuationCurve {
  std::vector<double> s;
  std::vector<double> fluctuation;
};
FluctuationCurve dfa_curve(std::span<const double> series,
                           std::span<const std::size_t> box_grid);
PowerLawFit dfa(std::span<const double> series, std::span<const std::size_t> box_grid);
PowerLawFit dfa(std::span<const double> series);  // default grid 16 .. T/8

// Default log-spaced analysis grid for a signal of the given length.
std::vector<std::size_t> default_scale_grid(std::size_t length,
                                            std::size_t lo = 16);

}  // namespace lexstat

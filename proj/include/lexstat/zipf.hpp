#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lexstat/corpus.hpp"
#include "lexstat/fit.hpp"

namespace lexstat {

// Per-word counts, frequencies and ranks plus the occurrence histogram N(n).
// Ranks run 1..V with counts non-increasing; ties in count are broken by first
// occurrence (earlier occurrence -> lower rank).
struct OccurrenceTable {
  struct Entry {
    std::string form;
    std::uint32_t word_id = 0;
    std::uint64_t count = 0;     // n_i
    double frequency = 0.0;      // f_i = n_i / T
    std::uint32_t rank = 0;      // 1-based
  };
  std::vector<Entry> entries;                                  // sorted by rank
  std::vector<std::pair<std::uint64_t, std::uint64_t>> histogram;  // (n, N(n)), n asc
  std::uint64_t total = 0;  // T

  std::size_t lexicon_size() const { return entries.size(); }  // V
  // rank indexed by word id (1-based ranks)
  std::vector<std::uint32_t> ranks_by_id() const;
};

OccurrenceTable occurrence_table(const TokenizedText& text);

// Builds a table directly from (form, count) pairs in first-occurrence order.
OccurrenceTable table_from_counts(std::span<const std::pair<std::string, std::uint64_t>> counts);

// OLS of log n(r) on log r over ranks in [window]; the exponent is reported
// positive (n ~ r^-z). Default window is ranks 50..1000.
PowerLawFit fit_zipf(const OccurrenceTable& table, double rank_lo = 50,
                     double rank_hi = 1000);

// Same fit on geometric rank bins (factor 1.4, one geometric-mean point per
// bin). Plain OLS over-weights the dense tail; the binned form follows the
// curve's envelope, which is what matters for stepped rank plots such as
// random-typing or fixed-length texts.
PowerLawFit fit_zipf_binned(const OccurrenceTable& table, double rank_lo,
                            double rank_hi);

// OLS of log N(n) on log n over counts in [window]; exponent reported positive
// (N ~ n^-zeta).
PowerLawFit fit_histogram(const OccurrenceTable& table, double n_lo = 1,
                          double n_hi = 100);

// z = 1 / (zeta - 1); requires zeta > 1.
double exponent_duality(double zeta);

// V(t) for t = 1..T: number of distinct ids among the first t tokens.
std::vector<std::uint32_t> heaps_curve(const TokenizedText& text);

// OLS of log V(t) on log t. Window defaults to the upper half [T/2, T].
PowerLawFit fit_heaps(std::span<const std::uint32_t> curve, double t_lo = 0,
                      double t_hi = 0);

// Nonlinear least squares of log n against log(a + b r): n ~ (a + b r)^(-1/nu)
// with a, b, nu > 0 enforced. Throws FitFailure on degenerate input or
// non-convergence.
struct GeneralizedRankFit {
  double a = 0.0;
  double b = 0.0;
  double nu = 0.0;
  double rms_residual = 0.0;
  std::size_t iterations = 0;
};

GeneralizedRankFit fit_generalized_rank(const OccurrenceTable& table);
GeneralizedRankFit fit_generalized_rank(std::span<const double> ranks,
                                        std::span<const double> counts);

}  // namespace lexstat

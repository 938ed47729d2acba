#include "lexstat/zipf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "lexstat/errors.hpp"

namespace lexstat {

std::vector<std::uint32_t> OccurrenceTable::ranks_by_id() const {
  std::uint32_t max_id = 0;
  for (const auto& e : entries) max_id = std::max(max_id, e.word_id);
  std::vector<std::uint32_t> ranks(max_id + 1, 0);
  for (const auto& e : entries) ranks[e.word_id] = e.rank;
  return ranks;
}

namespace {

OccurrenceTable finalize_table(std::vector<OccurrenceTable::Entry>&& entries,
                               std::vector<std::uint64_t>&& first_pos,
                               std::uint64_t total) {
  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (entries[a].count != entries[b].count) return entries[a].count > entries[b].count;
    return first_pos[a] < first_pos[b];
  });
  OccurrenceTable table;
  table.total = total;
  table.entries.reserve(entries.size());
  std::map<std::uint64_t, std::uint64_t> hist;
  for (std::size_t r = 0; r < order.size(); ++r) {
    OccurrenceTable::Entry e = std::move(entries[order[r]]);
    e.rank = static_cast<std::uint32_t>(r + 1);
    e.frequency = static_cast<double>(e.count) / static_cast<double>(total);
    ++hist[e.count];
    table.entries.push_back(std::move(e));
  }
  table.histogram.assign(hist.begin(), hist.end());
  return table;
}

}  // namespace

OccurrenceTable occurrence_table(const TokenizedText& text) {
  if (text.tokens.empty()) {
    throw PreconditionError("occurrence_table: empty text");
  }
  const std::size_t v = text.lexicon.size();
  std::vector<std::uint64_t> counts(v, 0);
  std::vector<std::uint64_t> first_pos(v, std::numeric_limits<std::uint64_t>::max());
  for (std::size_t t = 0; t < text.tokens.size(); ++t) {
    const std::uint32_t id = text.tokens[t];
    if (counts[id] == 0) first_pos[id] = t;
    ++counts[id];
  }
  std::vector<OccurrenceTable::Entry> entries;
  std::vector<std::uint64_t> fp;
  entries.reserve(v);
  for (std::uint32_t id = 0; id < v; ++id) {
    if (counts[id] == 0) continue;
    OccurrenceTable::Entry e;
    e.form = text.lexicon[id];
    e.word_id = id;
    e.count = counts[id];
    entries.push_back(std::move(e));
    fp.push_back(first_pos[id]);
  }
  return finalize_table(std::move(entries), std::move(fp), text.tokens.size());
}

OccurrenceTable table_from_counts(
    std::span<const std::pair<std::string, std::uint64_t>> counts) {
  if (counts.empty()) {
    throw PreconditionError("table_from_counts: empty input");
  }
  std::vector<OccurrenceTable::Entry> entries;
  std::vector<std::uint64_t> fp;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    OccurrenceTable::Entry e;
    e.form = counts[i].first;
    e.word_id = static_cast<std::uint32_t>(i);
    e.count = counts[i].second;
    total += e.count;
    entries.push_back(std::move(e));
    fp.push_back(i);
  }
  return finalize_table(std::move(entries), std::move(fp), total);
}

PowerLawFit fit_zipf(const OccurrenceTable& table, double rank_lo, double rank_hi) {
  std::vector<double> r, n;
  r.reserve(table.entries.size());
  n.reserve(table.entries.size());
  for (const auto& e : table.entries) {
    r.push_back(static_cast<double>(e.rank));
    n.push_back(static_cast<double>(e.count));
  }
  PowerLawFit fit = fit_loglog(r, n, rank_lo, rank_hi);
  fit.exponent = -fit.exponent;
  return fit;
}

PowerLawFit fit_zipf_binned(const OccurrenceTable& table, double rank_lo,
                            double rank_hi) {
  if (!(rank_lo >= 1) || !(rank_hi > rank_lo)) {
    throw PreconditionError("fit_zipf_binned: need 1 <= lo < hi");
  }
  std::vector<double> xs, ys;
  double lo = rank_lo;
  std::size_t cursor = 0;
  while (lo <= rank_hi && cursor < table.entries.size()) {
    const double hi = std::max(lo * 1.4, lo + 1.0);
    double sum_log_r = 0, sum_log_n = 0;
    std::size_t inside = 0;
    while (cursor < table.entries.size() && table.entries[cursor].rank < lo) {
      ++cursor;
    }
    for (std::size_t i = cursor; i < table.entries.size(); ++i) {
      const double r = static_cast<double>(table.entries[i].rank);
      if (r >= hi || r > rank_hi) break;
      sum_log_r += std::log(r);
      sum_log_n += std::log(static_cast<double>(table.entries[i].count));
      ++inside;
    }
    if (inside > 0) {
      xs.push_back(std::exp(sum_log_r / static_cast<double>(inside)));
      ys.push_back(std::exp(sum_log_n / static_cast<double>(inside)));
    }
    lo = hi;
  }
  if (xs.size() < 3) {
    throw PreconditionError("fit_zipf_binned: fewer than 3 bins in window");
  }
  PowerLawFit fit = fit_loglog(xs, ys, xs.front(), xs.back());
  fit.exponent = -fit.exponent;
  fit.window_lo = rank_lo;
  fit.window_hi = rank_hi;
  return fit;
}

PowerLawFit fit_histogram(const OccurrenceTable& table, double n_lo, double n_hi) {
  std::vector<double> n, cnt;
  n.reserve(table.histogram.size());
  cnt.reserve(table.histogram.size());
  for (const auto& [occ, num] : table.histogram) {
    n.push_back(static_cast<double>(occ));
    cnt.push_back(static_cast<double>(num));
  }
  PowerLawFit fit = fit_loglog(n, cnt, n_lo, n_hi);
  fit.exponent = -fit.exponent;
  return fit;
}

double exponent_duality(double zeta) {
  if (!(zeta > 1.0)) {
    throw DomainError("exponent_duality: need zeta > 1");
  }
  return 1.0 / (zeta - 1.0);
}

std::vector<std::uint32_t> heaps_curve(const TokenizedText& text) {
  if (text.tokens.empty()) {
    throw PreconditionError("heaps_curve: empty text");
  }
  std::vector<std::uint32_t> curve;
  curve.reserve(text.tokens.size());
  std::vector<bool> seen(text.lexicon.size(), false);
  std::uint32_t distinct = 0;
  for (std::uint32_t id : text.tokens) {
    if (!seen[id]) {
      seen[id] = true;
      ++distinct;
    }
    curve.push_back(distinct);
  }
  return curve;
}

PowerLawFit fit_heaps(std::span<const std::uint32_t> curve, double t_lo, double t_hi) {
  if (curve.empty()) {
    throw PreconditionError("fit_heaps: empty curve");
  }
  if (t_lo <= 0 || t_hi <= 0) {
    t_lo = static_cast<double>(curve.size()) / 2.0;
    t_hi = static_cast<double>(curve.size());
  }
  std::vector<double> t, v;
  t.reserve(curve.size());
  v.reserve(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    t.push_back(static_cast<double>(i + 1));
    v.push_back(static_cast<double>(curve[i]));
  }
  return fit_loglog(t, v, t_lo, t_hi);
}

namespace {

struct RankFitData {
  std::span<const double> log_r;
  std::span<const double> log_n;
};

// Parameters are optimized in log space to keep a, b, nu positive.
double rank_fit_sse(const std::vector<double>& p, const void* ctx) {
  const auto* d = static_cast<const RankFitData*>(ctx);
  const double a = std::exp(p[0]);
  const double b = std::exp(p[1]);
  const double inv_nu = 1.0 / std::exp(p[2]);
  double sse = 0;
  for (std::size_t i = 0; i < d->log_r.size(); ++i) {
    const double pred = -inv_nu * std::log(a + b * std::exp(d->log_r[i]));
    const double res = d->log_n[i] - pred;
    sse += res * res;
  }
  return sse;
}

}  // namespace

GeneralizedRankFit fit_generalized_rank(std::span<const double> ranks,
                                        std::span<const double> counts) {
  if (ranks.size() != counts.size() || ranks.size() < 4) {
    throw PreconditionError("fit_generalized_rank: need >= 4 (rank, count) points");
  }
  std::vector<double> lr, ln;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (!(ranks[i] > 0) || !(counts[i] > 0)) continue;
    lr.push_back(std::log(ranks[i]));
    ln.push_back(std::log(counts[i]));
  }
  if (lr.size() < 4) {
    throw PreconditionError("fit_generalized_rank: need >= 4 positive points");
  }
  const auto [nmin, nmax] = std::minmax_element(ln.begin(), ln.end());
  if (*nmax - *nmin < 1e-12) {
    throw FitFailure("fit_generalized_rank: counts carry no rank dependence (all equal)");
  }

  RankFitData data{lr, ln};
  // seed nu from a plain power-law slope, a and b from the end points
  const double slope = (ln.back() - ln.front()) / (lr.back() - lr.front() + 1e-12);
  const double nu0 = std::clamp(-1.0 / std::min(slope, -1e-3), 1e-2, 10.0);
  double best_value = std::numeric_limits<double>::infinity();
  std::vector<double> best;
  std::size_t iterations = 0;
  for (const double a0 : {0.1, 1.0, 10.0}) {
    std::vector<double> start = {std::log(a0), std::log(a0 * 0.1), std::log(nu0)};
    double value = 0;
    std::vector<double> sol = nelder_mead(start, 0.7, rank_fit_sse, &data, 4000, 1e-14, &value);
    iterations += 4000;
    if (value < best_value) {
      best_value = value;
      best = sol;
    }
  }
  if (best.empty() || !std::isfinite(best_value)) {
    throw FitFailure("fit_generalized_rank: optimizer failed to converge");
  }
  GeneralizedRankFit out;
  out.a = std::exp(best[0]);
  out.b = std::exp(best[1]);
  out.nu = std::exp(best[2]);
  out.rms_residual = std::sqrt(best_value / static_cast<double>(lr.size()));
  out.iterations = iterations;
  if (!(out.a > 0) || !(out.b > 0) || !(out.nu > 0) || !std::isfinite(out.rms_residual)) {
    throw FitFailure("fit_generalized_rank: non-finite or non-positive parameters");
  }
  return out;
}

GeneralizedRankFit fit_generalized_rank(const OccurrenceTable& table) {
  if (table.entries.size() < 4) {
    throw PreconditionError("fit_generalized_rank: need V >= 4");
  }
  std::vector<double> r, n;
  for (const auto& e : table.entries) {
    r.push_back(static_cast<double>(e.rank));
    n.push_back(static_cast<double>(e.count));
  }
  return fit_generalized_rank(r, n);
}

}  // namespace lexstat

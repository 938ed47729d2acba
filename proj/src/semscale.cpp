#include "lexstat/semscale.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "lexstat/burstiness.hpp"
#include "lexstat/errors.hpp"
#include "lexstat/fit.hpp"
#include "lexstat/numerics.hpp"

namespace lexstat {

double word_entropy_bits(const PartitionProfile& profile, std::uint32_t word_id) {
  if (!profile.has_word(word_id)) {
    throw PreconditionError("word_entropy_bits: word has no occurrences after truncation");
  }
  if (!profile.equal_parts) {
    throw PreconditionError("word_entropy_bits: requires an equal partition");
  }
  const double n = static_cast<double>(profile.word_totals[word_id]);
  double h = 0;
  for (const auto& [part, count] : profile.counts[word_id]) {
    h -= xlog2x(static_cast<double>(count) / n);
  }
  return h;
}

double expected_random_entropy(std::size_t total, std::size_t part_size,
                               std::uint64_t occurrences) {
  if (part_size < 1 || total < 1 || total % part_size != 0) {
    throw PreconditionError("expected_random_entropy: need s >= 1 and s | total");
  }
  if (occurrences < 1 || occurrences > total) {
    throw PreconditionError("expected_random_entropy: need 1 <= n_i <= total");
  }
  const double t = static_cast<double>(total);
  const double s = static_cast<double>(part_size);
  const double n = static_cast<double>(occurrences);
  const double m = t / s;
  if (part_size == 1) return log2_of(n);  // each part holds at most one
  // sum over k of the hypergeometric weight of k occurrences in one part
  // times (k/n) log2(k/n); weights advance by a ratio recurrence
  const std::uint64_t k_hi = std::min<std::uint64_t>(occurrences, part_size);
  const std::uint64_t k_lo = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(occurrences) + static_cast<std::int64_t>(part_size) -
             static_cast<std::int64_t>(total));
  if (k_hi < k_lo) return 0.0;
  // the weight recurrence runs in log space: far from the hypergeometric mode
  // the weights underflow doubles long before their contribution is negligible
  double log_w = log_binomial(n, static_cast<double>(k_lo)) +
                 log_binomial(t - n, s - static_cast<double>(k_lo)) -
                 log_binomial(t, s);
  double acc = 0;
  for (std::uint64_t k = k_lo;; ++k) {
    const double dk = static_cast<double>(k);
    acc += std::exp(log_w) * (dk / n) * log2_of(dk / n);
    if (k == k_hi) break;
    // log of w(k+1)/w(k) for the hypergeometric pmf
    log_w += std::log((n - dk) * (s - dk)) -
             std::log((dk + 1.0) * (t - n - s + dk + 1.0));
  }
  return -m * acc;
}

namespace {

struct WordPartCounts {
  // per word: sorted occurrence positions, reused across scales
  std::vector<std::vector<std::uint32_t>> positions;
};

ScalePoint evaluate_scale(const TokenizedText& text,
                          const WordPartCounts& index, std::size_t target_s) {
  const std::size_t total = text.tokens.size();
  const std::size_t m = std::max<std::size_t>(1, total / target_s);
  const std::size_t s = total / m;
  const std::size_t truncated = m * s;

  ScalePoint point;
  point.s = s;
  point.parts = m;

  // at s = 1 every placement yields identical per-part counts, and at M = 1
  // any shuffling is invisible: d is identically zero at both endpoints
  if (s == 1 || m == 1) {
    point.d = 0.0;
    return point;
  }

  // cache <h^R> per occurrence count; counts repeat heavily
  std::unordered_map<std::uint64_t, double> random_entropy;
  double d = 0, comp = 0;  // Kahan accumulation
  std::vector<std::uint32_t> part_counts;
  for (const auto& positions : index.positions) {
    if (positions.empty()) continue;
    // occurrences surviving truncation, grouped into parts
    part_counts.clear();
    std::uint64_t n_trunc = 0;
    std::uint32_t current_part = UINT32_MAX;
    for (std::uint32_t pos : positions) {
      if (pos >= truncated) break;
      const std::uint32_t part = pos / static_cast<std::uint32_t>(s);
      if (part == current_part) {
        ++part_counts.back();
      } else {
        part_counts.push_back(1);
        current_part = part;
      }
      ++n_trunc;
    }
    if (n_trunc == 0) continue;  // word vanished in the truncation
    double h = 0;
    const double n = static_cast<double>(n_trunc);
    for (std::uint32_t c : part_counts) {
      h -= xlog2x(static_cast<double>(c) / n);
    }
    auto it = random_entropy.find(n_trunc);
    if (it == random_entropy.end()) {
      it = random_entropy.emplace(n_trunc, expected_random_entropy(truncated, s, n_trunc))
               .first;
    }
    const double f = n / static_cast<double>(truncated);
    const double term = f * (it->second - h) - comp;
    const double next = d + term;
    comp = (next - d) - term;
    d = next;
  }
  point.d = d;
  return point;
}

}  // namespace

std::vector<std::size_t> default_scale_sweep_grid(std::size_t text_length) {
  if (text_length < 64) {
    throw PreconditionError("default_scale_sweep_grid: text too short");
  }
  std::vector<std::size_t> grid = log_grid(16, text_length / 2, 8);
  while (grid.size() > 25) {
    // thin evenly toward ~25 interior points
    std::vector<std::size_t> thin;
    for (std::size_t i = 0; i < grid.size(); i += 2) thin.push_back(grid[i]);
    if (thin.back() != grid.back()) thin.push_back(grid.back());
    grid.swap(thin);
  }
  grid.insert(grid.begin(), 1);
  grid.push_back(text_length);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

ScaleSweep scale_sweep(const TokenizedText& text,
                       std::span<const std::size_t> scale_grid) {
  if (text.tokens.empty()) {
    throw PreconditionError("scale_sweep: empty text");
  }
  if (scale_grid.empty()) {
    throw PreconditionError("scale_sweep: empty grid");
  }
  for (std::size_t s : scale_grid) {
    if (s < 1 || s > text.tokens.size()) {
      throw PreconditionError("scale_sweep: grid must lie within [1, T]");
    }
  }
  WordPartCounts index;
  index.positions.resize(text.lexicon.size());
  for (std::size_t t = 0; t < text.tokens.size(); ++t) {
    index.positions[text.tokens[t]].push_back(static_cast<std::uint32_t>(t));
  }
  ScaleSweep sweep;
  for (std::size_t s : scale_grid) {
    const ScalePoint pt = evaluate_scale(text, index, s);
    // distinct targets can truncate to the same effective scale
    if (!sweep.points.empty() && sweep.points.back().s == pt.s) continue;
    sweep.points.push_back(pt);
  }
  std::sort(sweep.points.begin(), sweep.points.end(),
            [](const ScalePoint& a, const ScalePoint& b) { return a.s < b.s; });

  std::size_t arg = 0;
  for (std::size_t i = 1; i < sweep.points.size(); ++i) {
    if (sweep.points[i].d > sweep.points[arg].d) arg = i;
  }
  sweep.raw_argmax_s = sweep.points[arg].s;
  sweep.s_max = static_cast<double>(sweep.points[arg].s);
  sweep.d_max = sweep.points[arg].d;
  if (arg > 0 && arg + 1 < sweep.points.size()) {
    // 3-point parabola in (log s, d)
    const double x0 = std::log(static_cast<double>(sweep.points[arg - 1].s));
    const double x1 = std::log(static_cast<double>(sweep.points[arg].s));
    const double x2 = std::log(static_cast<double>(sweep.points[arg + 1].s));
    const double y0 = sweep.points[arg - 1].d;
    const double y1 = sweep.points[arg].d;
    const double y2 = sweep.points[arg + 1].d;
    const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
    if (denom != 0) {
      const double a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
      const double b =
          (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
      if (a < 0) {
        const double xv = -b / (2 * a);
        if (xv >= x0 && xv <= x2) {
          sweep.s_max = std::exp(xv);
          const double c =
              (x1 * x2 * (x1 - x2) * y0 + x2 * x0 * (x2 - x0) * y1 +
               x0 * x1 * (x0 - x1) * y2) /
              denom;
          sweep.d_max = a * xv * xv + b * xv + c;
        }
      }
    }
  }
  return sweep;
}

ScaleSweep scale_sweep(const TokenizedText& text) {
  const std::vector<std::size_t> grid = default_scale_sweep_grid(text.tokens.size());
  return scale_sweep(text, grid);
}

std::vector<Contributor> top_contributors(const TokenizedText& text, std::size_t s,
                                          std::size_t count) {
  if (s < 1 || s > text.tokens.size()) {
    throw PreconditionError("top_contributors: scale outside [1, T]");
  }
  const std::size_t m = std::max<std::size_t>(1, text.tokens.size() / s);
  const PartitionProfile profile = partition(text, m);
  const std::size_t truncated = profile.truncated_length;
  const std::size_t s_actual = profile.part_size;
  std::vector<Contributor> all;
  std::unordered_map<std::uint64_t, double> cache;
  for (std::uint32_t id = 0; id < text.lexicon.size(); ++id) {
    if (!profile.has_word(id)) continue;
    Contributor c;
    c.word = text.lexicon[id];
    c.count = profile.word_totals[id];
    c.h = word_entropy_bits(profile, id);
    auto it = cache.find(c.count);
    if (it == cache.end()) {
      it = cache.emplace(c.count, expected_random_entropy(truncated, s_actual, c.count))
               .first;
    }
    c.h_random = it->second;
    c.f_d = (static_cast<double>(c.count) / static_cast<double>(truncated)) *
            (c.h_random - c.h);
    all.push_back(std::move(c));
  }
  std::sort(all.begin(), all.end(), [](const Contributor& a, const Contributor& b) {
    if (a.f_d != b.f_d) return a.f_d > b.f_d;
    return a.word < b.word;
  });
  if (all.size() > count) all.resize(count);
  return all;
}

TokenizedText concat_documents(std::span<const TokenizedText> documents,
                               std::vector<std::size_t>* bounds) {
  if (documents.empty()) {
    throw PreconditionError("concat_documents: no documents");
  }
  TokenizedText merged;
  merged.source_id = "corpus";
  std::unordered_map<std::string, std::uint32_t> ids;
  if (bounds != nullptr) bounds->clear();
  for (const TokenizedText& doc : documents) {
    for (std::uint32_t token : doc.tokens) {
      const std::string& form = doc.lexicon[token];
      auto [it, inserted] =
          ids.emplace(form, static_cast<std::uint32_t>(merged.lexicon.size()));
      if (inserted) merged.lexicon.push_back(form);
      merged.tokens.push_back(it->second);
    }
    if (bounds != nullptr) bounds->push_back(merged.tokens.size());
  }
  merged.sentence_bounds.push_back(merged.tokens.size());
  return merged;
}

CrossTextReport cross_text_heterogeneity(std::span<const TokenizedText> documents) {
  if (documents.size() < 2) {
    throw PreconditionError("cross_text_heterogeneity: need >= 2 documents");
  }
  std::vector<std::size_t> bounds;
  const TokenizedText merged = concat_documents(documents, &bounds);
  const PartitionProfile profile = partition_from_bounds(merged, bounds);
  CrossTextReport report;
  report.documents = documents.size();
  const double m = static_cast<double>(documents.size());
  report.homogeneous_level = (m - 1.0) / (2.0 * std::log(m));
  for (std::uint32_t id = 0; id < merged.lexicon.size(); ++id) {
    CrossTextRecord rec;
    rec.word = merged.lexicon[id];
    rec.count = profile.word_totals[id];
    rec.h = partition_entropy(profile, id);
    rec.heterogeneity = (1.0 - rec.h) * static_cast<double>(rec.count);
    report.records.push_back(std::move(rec));
  }
  std::sort(report.records.begin(), report.records.end(),
            [](const CrossTextRecord& a, const CrossTextRecord& b) {
              if (a.heterogeneity != b.heterogeneity) {
                return a.heterogeneity > b.heterogeneity;
              }
              return a.word < b.word;
            });
  return report;
}

}  // namespace lexstat

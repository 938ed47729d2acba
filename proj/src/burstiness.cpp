#include "lexstat/burstiness.hpp"

#include <algorithm>
#include <cmath>

#include "lexstat/errors.hpp"
#include "lexstat/numerics.hpp"

namespace lexstat {

namespace {

std::vector<std::size_t> positions_of(const TokenizedText& text, std::uint32_t word_id) {
  std::vector<std::size_t> pos;
  for (std::size_t t = 0; t < text.tokens.size(); ++t) {
    if (text.tokens[t] == word_id) pos.push_back(t);
  }
  return pos;
}

OccurrenceDistances distances_from_positions(const std::vector<std::size_t>& pos,
                                             std::size_t total,
                                             bool include_boundaries) {
  OccurrenceDistances d;
  if (include_boundaries) {
    d.x.push_back(static_cast<double>(pos.front()));
  }
  for (std::size_t i = 1; i < pos.size(); ++i) {
    d.x.push_back(static_cast<double>(pos[i] - pos[i - 1] - 1));
  }
  if (include_boundaries) {
    d.x.push_back(static_cast<double>(total - 1 - pos.back()));
  }
  double mean = 0;
  for (double x : d.x) mean += x;
  mean /= static_cast<double>(d.x.size());
  d.u.reserve(d.x.size());
  for (double x : d.x) {
    // mean 0 means every gap is 0: equally spaced, u = 1 by convention
    d.u.push_back(mean > 0 ? x / mean : 1.0);
  }
  return d;
}

}  // namespace

OccurrenceDistances occurrence_distances(const TokenizedText& text,
                                         std::uint32_t word_id,
                                         bool include_boundaries) {
  if (word_id >= text.lexicon.size()) {
    throw PreconditionError("occurrence_distances: unknown word id");
  }
  const std::vector<std::size_t> pos = positions_of(text, word_id);
  if (pos.size() < 2) {
    throw InsufficientOccurrencesError("occurrence_distances: word occurs fewer than 2 times");
  }
  return distances_from_positions(pos, text.tokens.size(), include_boundaries);
}

double sigma_of_rescaled(const std::vector<double>& u) {
  double mean = 0;
  for (double v : u) mean += v;
  mean /= static_cast<double>(u.size());
  double m2 = 0;
  for (double v : u) m2 += (v - mean) * (v - mean);
  return std::sqrt(m2 / static_cast<double>(u.size()));  // population
}

double sigma_index(const TokenizedText& text, std::uint32_t word_id,
                   bool include_boundaries) {
  return sigma_of_rescaled(occurrence_distances(text, word_id, include_boundaries).u);
}

DistanceCdf distance_cdf(const TokenizedText& text, std::uint32_t word_id,
                         const std::vector<double>& u_grid) {
  OccurrenceDistances d = occurrence_distances(text, word_id);
  std::sort(d.u.begin(), d.u.end());
  DistanceCdf cdf;
  cdf.grid = u_grid;
  const double total = static_cast<double>(d.u.size());
  for (double g : u_grid) {
    const auto it = std::upper_bound(d.u.begin(), d.u.end(), g);
    cdf.empirical.push_back(static_cast<double>(it - d.u.begin()) / total);
    cdf.poisson.push_back(1.0 - std::exp(-g));
  }
  return cdf;
}

double partition_entropy(const PartitionProfile& profile, std::uint32_t word_id) {
  if (!profile.has_word(word_id)) {
    throw PreconditionError("partition_entropy: word absent from partition");
  }
  const std::size_t m = profile.parts;
  if (m == 1) return 0.0;
  // p_i^m = f_i^m / sum_k f_i^k with f_i^m = n_i^m / T_m
  double fsum = 0;
  for (const auto& [part, count] : profile.counts[word_id]) {
    fsum += static_cast<double>(count) / static_cast<double>(profile.part_lengths[part]);
  }
  const double log_m = std::log(static_cast<double>(m));
  double h = 0;
  for (const auto& [part, count] : profile.counts[word_id]) {
    const double p =
        static_cast<double>(count) / static_cast<double>(profile.part_lengths[part]) / fsum;
    h -= p * std::log(p) / log_m;
  }
  return h;
}

EIndex e_index(const PartitionProfile& profile, std::uint32_t word_id) {
  if (!profile.has_word(word_id)) {
    throw PreconditionError("e_index: word absent from partition");
  }
  const double m = static_cast<double>(profile.parts);
  if (profile.parts < 2) {
    throw PreconditionError("e_index: need M >= 2");
  }
  EIndex e;
  e.unequal_parts_warning = !profile.equal_parts;
  const double h = partition_entropy(profile, word_id);
  const double n = static_cast<double>(profile.word_totals[word_id]);
  e.value = (2.0 * std::log(m) / (m - 1.0)) * n * (1.0 - h);
  return e;
}

std::vector<BurstinessRecord> rank_keywords(const TokenizedText& text,
                                            const PartitionProfile& profile,
                                            std::uint64_t min_count,
                                            KeywordIndex index,
                                            bool include_boundaries) {
  if (min_count < 2) {
    throw PreconditionError("rank_keywords: need min_count >= 2");
  }
  // single pass for all position lists
  std::vector<std::vector<std::size_t>> positions(text.lexicon.size());
  for (std::size_t t = 0; t < text.tokens.size(); ++t) {
    positions[text.tokens[t]].push_back(t);
  }
  std::vector<BurstinessRecord> records;
  for (std::uint32_t id = 0; id < text.lexicon.size(); ++id) {
    if (positions[id].size() < min_count || !profile.has_word(id)) continue;
    BurstinessRecord rec;
    rec.word = text.lexicon[id];
    rec.word_id = id;
    rec.count = positions[id].size();
    rec.sigma = sigma_of_rescaled(
        distances_from_positions(positions[id], text.tokens.size(), include_boundaries).u);
    rec.h = partition_entropy(profile, id);
    const EIndex e = e_index(profile, id);
    rec.e = e.value;
    rec.unequal_parts = e.unequal_parts_warning;
    records.push_back(std::move(rec));
  }
  const bool by_sigma = index == KeywordIndex::sigma;
  std::sort(records.begin(), records.end(),
            [by_sigma](const BurstinessRecord& a, const BurstinessRecord& b) {
              const double ka = by_sigma ? a.sigma : a.e;
              const double kb = by_sigma ? b.sigma : b.e;
              if (ka != kb) return ka > kb;
              if (a.count != b.count) return a.count > b.count;
              return a.word < b.word;
            });
  return records;
}

GramBurstiness gram_burstiness(const SymbolSequence& seq, std::size_t l_lo,
                               std::size_t l_hi) {
  if (l_lo < 1 || l_hi < l_lo) {
    throw PreconditionError("gram_burstiness: need 1 <= l_lo <= l_hi");
  }
  double guard = 10.0;
  for (std::size_t k = 0; k < l_hi; ++k) guard *= 4.0;
  if (static_cast<double>(seq.symbols.size()) < guard) {
    throw ResourceError("gram_burstiness: sequence shorter than the 10 * 4^l guard");
  }
  GramBurstiness out;
  for (std::size_t l = l_lo; l <= l_hi; ++l) {
    double offset_sum = 0;
    for (std::size_t offset = 0; offset < l; ++offset) {
      const TokenizedText grams = ngrams(seq, l, offset);
      std::vector<std::vector<std::size_t>> positions(grams.lexicon.size());
      for (std::size_t t = 0; t < grams.tokens.size(); ++t) {
        positions[grams.tokens[t]].push_back(t);
      }
      double acc = 0;
      std::size_t words = 0;
      for (const auto& pos : positions) {
        if (pos.size() < 2) continue;
        acc += sigma_of_rescaled(
            distances_from_positions(pos, grams.tokens.size(), false).u);
        ++words;
      }
      if (words == 0) {
        throw ResourceError("gram_burstiness: no gram occurs twice at l=" +
                            std::to_string(l));
      }
      offset_sum += acc / static_cast<double>(words);
    }
    out.l.push_back(l);
    out.mean_sigma.push_back(offset_sum / static_cast<double>(l));
  }
  return out;
}

}  // namespace lexstat

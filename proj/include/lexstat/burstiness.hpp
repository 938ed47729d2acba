#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lexstat/corpus.hpp"
#include "lexstat/partition.hpp"

namespace lexstat {

// Inter-occurrence distances of one word: x = number of tokens strictly
// between consecutive occurrences (0 for adjacent), u = x / mean(x). When all
// gaps are equal the rescaled values are 1 by construction; the all-adjacent
// case (mean 0) keeps that convention. With `include_boundaries` the gaps from
// the text start to the first occurrence and from the last occurrence to the
// end are prepended/appended before rescaling.
struct OccurrenceDistances {
  std::vector<double> x;
  std::vector<double> u;
};
OccurrenceDistances occurrence_distances(const TokenizedText& text,
                                         std::uint32_t word_id,
                                         bool include_boundaries = false);

// Burstiness index: population standard deviation of u (1 for a Poissonian
// arrangement, larger for self-attracting words).
double sigma_index(const TokenizedText& text, std::uint32_t word_id,
                   bool include_boundaries = false);
double sigma_of_rescaled(const std::vector<double>& u);

// Empirical cumulative distribution of u on a grid, with the Poisson baseline
// 1 - exp(-u) evaluated on the same grid.
struct DistanceCdf {
  std::vector<double> grid;
  std::vector<double> empirical;
  std::vector<double> poisson;
};
DistanceCdf distance_cdf(const TokenizedText& text, std::uint32_t word_id,
                         const std::vector<double>& u_grid);

// Partition entropy h_i in base M, using part-length-normalized frequencies so
// unequal parts are handled. h = 0 when all occurrences fall in one part, 1
// when occurrences are proportional to part lengths. M = 1 gives 0.
double partition_entropy(const PartitionProfile& profile, std::uint32_t word_id);

// E_i = (2 ln M)/(M-1) * n_i * (1 - h_i); about 1 for uniform random
// placement over equal parts. `unequal_parts_warning` is set when the profile
// violates the formula's equal-part premise.
struct EIndex {
  double value = 0.0;
  bool unequal_parts_warning = false;
};
EIndex e_index(const PartitionProfile& profile, std::uint32_t word_id);

struct BurstinessRecord {
  std::string word;
  std::uint32_t word_id = 0;
  std::uint64_t count = 0;
  double sigma = 0.0;
  double e = 0.0;
  double h = 0.0;       // partition entropy, base M
  bool unequal_parts = false;
};

enum class KeywordIndex { sigma, e };

// Records for every word with n_i >= min_count, sorted descending by the
// chosen index; ties by count, then lexicographically.
std::vector<BurstinessRecord> rank_keywords(const TokenizedText& text,
                                            const PartitionProfile& profile,
                                            std::uint64_t min_count,
                                            KeywordIndex index,
                                            bool include_boundaries = false);

// Mean burstiness of non-overlapping l-gram "words", averaged over the lexicon
// and over all l offsets, for each l in [l_lo, l_hi]. Guarded at sequence
// length >= 10 * 4^l.
struct GramBurstiness {
  std::vector<std::size_t> l;
  std::vector<double> mean_sigma;
};
GramBurstiness gram_burstiness(const SymbolSequence& seq, std::size_t l_lo,
                               std::size_t l_hi);

}  // namespace lexstat

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lexstat/corpus.hpp"
#include "lexstat/partition.hpp"

namespace lexstat {

// Entropy (base 2) of one word's distribution over an equal partition, using
// occurrence fractions p_i^m = n_i^m / n_i. Words that vanished in the
// truncation are rejected.
double word_entropy_bits(const PartitionProfile& profile, std::uint32_t word_id);

// Expected partition entropy of a word with n_i occurrences placed uniformly
// at random in a text of length total = M*s, parts of size s: the
// hypergeometric average, exact via a log-binomial recurrence.
double expected_random_entropy(std::size_t total, std::size_t part_size,
                               std::uint64_t occurrences);

struct ScalePoint {
  std::size_t s = 0;        // actual part size after truncation
  std::size_t parts = 0;    // M
  double d = 0.0;           // bits/word
};

struct ScaleSweep {
  std::vector<ScalePoint> points;     // ordered by s
  double s_max = 0.0;                 // argmax refined by a 3-point parabola in log s
  double d_max = 0.0;
  std::size_t raw_argmax_s = 0;       // grid argmax without refinement
};

// d(s) = sum_i f_i * (<h_i^R> - h_i) over the scale grid, with f_i recomputed
// on the truncated length at every scale. The default grid is ~25 log-spaced
// scales in [16, T/2] plus the exact endpoints s = 1 and s = T.
ScaleSweep scale_sweep(const TokenizedText& text,
                       std::span<const std::size_t> scale_grid);
ScaleSweep scale_sweep(const TokenizedText& text);

std::vector<std::size_t> default_scale_sweep_grid(std::size_t text_length);

struct Contributor {
  std::string word;
  std::uint64_t count = 0;
  double h = 0.0;            // empirical partition entropy, bits
  double h_random = 0.0;     // expected under random placement
  double f_d = 0.0;          // f_i * d_i
};

// Words ranked by their contribution f_i * d_i to d at one scale.
std::vector<Contributor> top_contributors(const TokenizedText& text, std::size_t s,
                                          std::size_t count);

struct CrossTextRecord {
  std::string word;
  std::uint64_t count = 0;              // n_i over the whole corpus
  double h = 0.0;                       // base-M entropy over documents
  double heterogeneity = 0.0;           // (1 - h_i) * n_i
};

struct CrossTextReport {
  std::vector<CrossTextRecord> records;         // descending heterogeneity
  double homogeneous_level = 0.0;               // (M-1) / (2 ln M)
  std::size_t documents = 0;
};

// Document-partition heterogeneity of every word across >= 2 documents;
// unequal lengths are handled by the length-normalized entropy.
CrossTextReport cross_text_heterogeneity(std::span<const TokenizedText> documents);

// Concatenates documents onto a shared lexicon; bounds receive the document
// end positions.
TokenizedText concat_documents(std::span<const TokenizedText> documents,
                               std::vector<std::size_t>* bounds);

}  // namespace lexstat

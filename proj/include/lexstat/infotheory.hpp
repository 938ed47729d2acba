#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexstat/corpus.hpp"
#include "lexstat/zipf.hpp"

namespace lexstat {

// Shannon entropy of a probability vector. Entries must be non-negative and
// sum to 1 within 1e-9. base defaults to 2 (bits).
double entropy(std::span<const double> dist, double base = 2.0);

// Kullback-Leibler divergence D(p||q). Returns +infinity when q vanishes
// somewhere p does not (absolute-continuity violation).
double kl_divergence(std::span<const double> p, std::span<const double> q,
                     double base = 2.0);

// Mutual information of a joint matrix (row-major, rows x cols), normalized
// within 1e-9.
double mutual_information(std::span<const double> joint, std::size_t rows,
                          std::size_t cols, double base = 2.0);

// Plug-in block entropies H_n for n = 1..n_max over overlapping blocks, plus
// the conditional increments F_n = H_n - H_(n-1) (F_1 = H_1). A warning flag
// is set for block sizes where alphabet^n > length / 100.
struct BlockEntropies {
  std::vector<double> h;            // H_1 .. H_n_max, bits
  std::vector<double> f;            // F_1 .. F_n_max, bits/symbol
  std::vector<bool> undersampled;   // warning per n
};
BlockEntropies block_entropies(std::span<const std::uint32_t> seq,
                               std::size_t alphabet, std::size_t n_max);
BlockEntropies block_entropies(const SymbolSequence& seq, std::size_t n_max);

// r = 1 - h / log2(V), clamped into [0, 1]; `clamped` reports estimator noise.
struct Redundancy {
  double value = 0.0;
  bool clamped = false;
};
Redundancy redundancy(double h, std::size_t lexicon);

// Fractions q_k^n of correct guesses at guess k for context length n.
struct GuessTable {
  std::size_t alphabet_size = 27;
  std::map<std::size_t, std::vector<double>> rows;  // n -> q_1..q_A

  void validate() const;  // rows must sum to 1 within 1e-9
};

// Bounds on F_n from a guess table:
//   sum_k k (q_k - q_(k+1)) log2 k  <=  F_n  <=  -sum_k q_k log2 q_k.
std::pair<double, double> shannon_bounds(const GuessTable& table, std::size_t n);

// Entropy-rate estimate from increasing-window match lengths. For position i
// (1-based), Lambda_i = 1 + length of the longest prefix of seq[i..] that
// occurs starting at some earlier position (overlap with the future allowed).
// The per-position ratios y_i = Lambda_i / log2(i) drift like 1/h + c/log2(i),
// so the estimate is the extrapolated intercept: least squares of y_i on
// 1/log2(i) over i >= 256, h = 1/intercept. Falls back to the plain ratio
// form h = (n-1) / sum(y_i) for sequences shorter than 1024 (flagged).
struct LzEstimate {
  double h = 0.0;            // bits/symbol
  double h_plain = 0.0;      // uncorrected ratio estimator, for reference
  std::size_t n = 0;
  std::size_t i_min = 0;     // first position used by the regression
  bool short_sequence = false;
};
LzEstimate lz_entropy_estimate(std::span<const std::uint32_t> seq);
LzEstimate lz_entropy_estimate(const SymbolSequence& seq);
LzEstimate lz_entropy_estimate(const TokenizedText& text);

// Zipf entropies of an occurrence table: exact multinomial form per word,
// its Stirling approximation, and the uniform-lexicon ceiling log2 V.
struct ZipfEntropy {
  double h_z_exact = 0.0;     // log2(T! / prod n_i!) / T
  double h_z_stirling = 0.0;  // -sum f_i log2 f_i
  double h0 = 0.0;            // log2 V
};
ZipfEntropy zipf_entropy(const OccurrenceTable& table);

struct EntropyReport {
  double h = 0.0;               // sequence entropy estimate, bits/word
  double h_z_exact = 0.0;
  double h_z_stirling = 0.0;
  double h0 = 0.0;
  double d_stirling = 0.0;      // h_z_stirling - h
  double d_exact = 0.0;         // h_z_exact - h
  double redundancy_value = 0.0;
  bool redundancy_clamped = false;
  std::string estimator;
};

// Word-ordering information D = h_Z - h with h from the match-length
// estimator on the word-id sequence.
EntropyReport word_order_information(const TokenizedText& text);

// Two-word Markov language: M[i][j] = probability that word i follows word j.
struct MarkovLanguage {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double p1 = 0.0;                  // stationary probability of word 1
  double p2 = 0.0;
  std::optional<double> lambda;     // correlation length, absent when mu1+mu2 <= 1
  double h_z = 0.0;                 // -p1 log2 p1 - p2 log2 p2
  double entropy_rate = 0.0;        // analytic h, bits/word
};

MarkovLanguage markov_language(double mu1, double mu2);
std::vector<std::uint32_t> markov_generate(const MarkovLanguage& ml,
                                           std::size_t length, std::uint64_t seed);

}  // namespace lexstat

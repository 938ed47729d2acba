#pragma once

#include <cstdint>
#include <vector>

namespace lexstat {

// Binary word-meaning matrix: l words (rows) by k meanings (columns).
class WordMeaningMatrix {
 public:
  WordMeaningMatrix(std::size_t words, std::size_t meanings)
      : words_(words), meanings_(meanings), cells_(words * meanings, 0) {}

  std::size_t words() const { return words_; }
  std::size_t meanings() const { return meanings_; }
  bool at(std::size_t i, std::size_t j) const { return cells_[i * meanings_ + j] != 0; }
  void set(std::size_t i, std::size_t j, bool value) {
    cells_[i * meanings_ + j] = value ? 1 : 0;
  }
  void flip(std::size_t i, std::size_t j) { cells_[i * meanings_ + j] ^= 1; }

  std::vector<std::size_t> column_sums() const;  // sigma_j, synonyms per meaning

 private:
  std::size_t words_;
  std::size_t meanings_;
  std::vector<std::uint8_t> cells_;
};

// p(w_i) = (1/k) sum_j a_ij / sigma_j; empty columns contribute nothing, so
// the probabilities sum to (number of linked meanings) / k.
std::vector<double> word_probabilities(const WordMeaningMatrix& a);

// Speaker effort: entropy of p(w) in base-l units, in [0, 1] for fully linked
// matrices.
double speaker_effort(const WordMeaningMatrix& a);

// Hearer effort: mean base-k entropy of p(m | w) weighted by p(w).
double hearer_effort(const WordMeaningMatrix& a);

// Communication cost: lambda * H' + (1 - lambda) * H, lambda in (0, 1).
double cost(const WordMeaningMatrix& a, double lambda);

// Word-meaning mutual information in base-l units.
double word_meaning_information(const WordMeaningMatrix& a);

// Fraction of words with p(w_i) > 0.
double lexicon_fraction(const WordMeaningMatrix& a);

struct OptimizeRecord {
  double cost = 0.0;
  double information = 0.0;
  double lexicon = 0.0;
};

struct OptimizeResult {
  WordMeaningMatrix matrix{1, 1};
  std::vector<OptimizeRecord> trajectory;  // one record per iteration
  std::size_t stall_iteration = 0;         // last accepted move
  std::size_t accepted = 0;
};

// Greedy stochastic minimization of the cost: start from density-1/2 random A;
// per iteration flip each cell independently with probability flip_rate
// (default 2/(l*k)); keep the candidate only when the cost strictly decreases.
// Candidates that leave some meaning without any word are rejected, which
// removes the all-zero matrix as a cost-0 absorbing state.
OptimizeResult optimize(std::size_t words, std::size_t meanings, double lambda,
                        std::size_t iterations, double flip_rate, std::uint64_t seed);

struct SweepPoint {
  double lambda = 0.0;
  double mean_information = 0.0;
  double std_information = 0.0;
  double mean_lexicon = 0.0;
  double std_lexicon = 0.0;
  double mean_stall_iteration = 0.0;
};

// Independent optimizations per lambda grid point; per-run seeds derive from
// (seed, grid index, run index), so a fixed seed reproduces the whole sweep.
std::vector<SweepPoint> lambda_sweep(std::size_t words, std::size_t meanings,
                                     const std::vector<double>& lambda_grid,
                                     std::size_t runs_per_lambda,
                                     std::size_t iterations, std::uint64_t seed,
                                     std::size_t threads = 1);

}  // namespace lexstat

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lexstat/corpus.hpp"
#include "lexstat/zipf.hpp"

namespace lexstat {

// Parameters for the reinforcement text generators. `alpha` is the constant
// new-word rate; alpha0/nu drive the decaying rate alpha(t) = alpha0 t^(nu-1);
// mu is the per-step death probability of the population variant.
struct GeneratorConfig {
  double alpha = 0.05;
  double alpha0 = 0.0;
  double nu = 1.0;
  double mu = 0.0;
  std::uint64_t seed = 0;
  std::size_t steps = 1;
  std::size_t t0 = 1;                       // initial text length (t0 seed tokens)
  std::vector<std::uint64_t> initial;       // optional seed-text counts per word

  void validate() const;
};

// Constant-rate reinforcement generator: each step adds a new word with
// probability alpha, otherwise repeats an occurrence drawn uniformly from all
// prior token occurrences (equivalent to selection proportional to count).
// Output length = t0 + steps.
TokenizedText simon_generate(const GeneratorConfig& cfg);

// Expected stationary profile P(n) of the constant-rate model, exact via the
// Beta function, plus its power-law approximation.
struct SimonProfile {
  double exact = 0.0;   // alpha/(1-alpha) * B(n, zeta)
  double approx = 0.0;  // alpha/(1-alpha) * Gamma(zeta) * n^(-zeta)
  double zeta = 0.0;    // 1 + 1/(1-alpha)
};
SimonProfile simon_profile(std::uint64_t n, double alpha);

// Decaying-rate variant: per-step new-word probability min(1, alpha0 t^(nu-1)).
// nu = 1 reduces exactly to simon_generate with alpha = alpha0.
TokenizedText simon_extended_generate(const GeneratorConfig& cfg);

// Birth/death population variant: each step one birth (new name with
// probability alpha, else proportional to bearer count), then with probability
// mu one uniformly chosen individual dies. Returns the final population table
// by name. Throws ExtinctionError if the population hits zero.
OccurrenceTable simon_death_generate(const GeneratorConfig& cfg);

struct MonkeyConfig {
  std::size_t alphabet = 26;   // M non-space letters
  double p0 = 0.2;             // space probability
  std::size_t length = 0;      // characters to emit
  std::uint64_t seed = 0;

  void validate() const;
};

// I.i.d. character stream cut at spaces into words; empty words are dropped.
TokenizedText monkey_generate(const MonkeyConfig& cfg);

// Closed-form rank exponent of the random-typing model: 1 + ln(1-p0)/ln M.
double monkey_predicted_z(std::size_t alphabet, double p0);

// T i.i.d. uniform words over the M^l fixed-length possibilities. Guarded at
// M^l <= 2^40.
TokenizedText fixed_length_generate(std::size_t alphabet, std::size_t l,
                                    std::size_t count, std::uint64_t seed);

// A discrete distribution as (value, probability) atoms; probabilities must
// sum to 1 within 1e-9.
using DiscreteDist = std::vector<std::pair<double, double>>;

struct LangevinResult {
  std::vector<double> final_values;  // one per surviving walker
  std::size_t diverged = 0;          // walkers flagged at |n| > 1e12
};

// Iterates n <- n + a + b*n for an ensemble of walkers with i.i.d. draws
// a ~ f, b ~ g.
LangevinResult langevin_simulate(const DiscreteDist& f, const DiscreteDist& g,
                                 std::size_t steps, std::size_t walkers,
                                 std::uint64_t seed, double n0 = 0.0);

// Solves sum_b g(b) (1+b)^gamma = 1 for gamma > 0 by bisection on [1e-6, 64].
// Throws NoRootError when the bracket has no sign change.
double kesten_exponent(const DiscreteDist& g, double tol = 1e-10);

}  // namespace lexstat

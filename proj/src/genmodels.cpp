#include "lexstat/genmodels.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "lexstat/errors.hpp"
#include "lexstat/numerics.hpp"
#include "lexstat/rng.hpp"

namespace lexstat {

namespace {

// Synthetic surface forms are letter-only (base-26 suffix) so serialized
// generator output survives re-tokenization under the words scheme.
std::string letter_suffix(std::size_t i) {
  std::string s;
  ++i;
  while (i > 0) {
    --i;
    s += static_cast<char>('a' + i % 26);
    i /= 26;
  }
  return s;
}

std::vector<std::string> numbered_lexicon(std::size_t v, const char* prefix) {
  std::vector<std::string> lex;
  lex.reserve(v);
  for (std::size_t i = 0; i < v; ++i) {
    lex.push_back(prefix + letter_suffix(i));
  }
  return lex;
}

// Shared recurrence for the constant- and decaying-rate generators. The token
// list itself is the count-proportional sampler: a uniform index into prior
// occurrences selects word w with probability n_w / t.
TokenizedText run_reinforcement(const GeneratorConfig& cfg, bool extended) {
  cfg.validate();
  Rng rng(cfg.seed);
  TokenizedText text;
  text.tokens.reserve(cfg.t0 + cfg.steps);
  std::uint32_t next_id = 0;
  if (cfg.initial.empty()) {
    for (std::size_t i = 0; i < cfg.t0; ++i) {
      text.tokens.push_back(next_id++);
    }
  } else {
    for (std::uint64_t count : cfg.initial) {
      for (std::uint64_t c = 0; c < count; ++c) {
        text.tokens.push_back(next_id);
      }
      ++next_id;
    }
  }
  if (text.tokens.empty()) {
    throw PreconditionError("reinforcement generator: empty initial text");
  }
  for (std::size_t step = 0; step < cfg.steps; ++step) {
    const double t = static_cast<double>(text.tokens.size());
    const double alpha = extended
                             ? std::min(1.0, cfg.alpha0 * std::pow(t, cfg.nu - 1.0))
                             : cfg.alpha;
    if (rng.unit() < alpha) {
      text.tokens.push_back(next_id++);
    } else {
      const std::size_t pick = static_cast<std::size_t>(rng.below(text.tokens.size()));
      text.tokens.push_back(text.tokens[pick]);
    }
  }
  text.lexicon = numbered_lexicon(next_id, "w");
  text.sentence_bounds.push_back(text.tokens.size());
  text.source_id = extended ? "simon-extended" : "simon";
  return text;
}

}  // namespace

void GeneratorConfig::validate() const {
  // alpha = 1 is allowed: every token comes out distinct
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw PreconditionError("GeneratorConfig: need 0 < alpha <= 1");
  }
  if (!(nu > 0.0) || nu > 1.0) {
    throw PreconditionError("GeneratorConfig: need 0 < nu <= 1");
  }
  if (mu < 0.0 || !(mu < 1.0)) {
    throw PreconditionError("GeneratorConfig: need 0 <= mu < 1");
  }
  if (steps < 1) {
    throw PreconditionError("GeneratorConfig: need steps >= 1");
  }
}

TokenizedText simon_generate(const GeneratorConfig& cfg) {
  if (cfg.mu != 0.0) {
    throw PreconditionError("simon_generate: mu must be 0 (use simon_death_generate)");
  }
  return run_reinforcement(cfg, false);
}

TokenizedText simon_extended_generate(const GeneratorConfig& cfg) {
  if (cfg.mu != 0.0) {
    throw PreconditionError("simon_extended_generate: mu must be 0");
  }
  if (!(cfg.alpha0 > 0.0) || cfg.alpha0 > 1.0) {
    throw PreconditionError("simon_extended_generate: need 0 < alpha0 <= 1");
  }
  GeneratorConfig c = cfg;
  c.alpha = cfg.alpha0;  // satisfies validate(); the rate schedule overrides it
  return run_reinforcement(c, true);
}

SimonProfile simon_profile(std::uint64_t n, double alpha) {
  if (n < 1) {
    throw PreconditionError("simon_profile: need n >= 1");
  }
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw PreconditionError("simon_profile: need 0 < alpha < 1");
  }
  SimonProfile prof;
  prof.zeta = 1.0 + 1.0 / (1.0 - alpha);
  const double pref = alpha / (1.0 - alpha);
  const double dn = static_cast<double>(n);
  prof.exact = pref * std::exp(log_beta(dn, prof.zeta));
  prof.approx = pref * std::exp(std::lgamma(prof.zeta) - prof.zeta * std::log(dn));
  return prof;
}

OccurrenceTable simon_death_generate(const GeneratorConfig& cfg) {
  cfg.validate();
  if (!(cfg.alpha + cfg.mu < 1.0)) {
    throw PreconditionError("simon_death_generate: need alpha + mu < 1");
  }
  Rng rng(cfg.seed);
  // individuals[i] = name id of bearer i; uniform draws over it implement the
  // count-proportional choice, swap-pop implements uniform death
  std::vector<std::uint32_t> individuals;
  individuals.reserve(cfg.steps / 2 + cfg.t0);
  std::uint32_t next_name = 0;
  for (std::size_t i = 0; i < std::max<std::size_t>(cfg.t0, 1); ++i) {
    individuals.push_back(next_name++);
  }
  std::vector<std::uint64_t> counts(next_name, 1);
  std::vector<std::uint64_t> birth_step(next_name, 0);

  for (std::size_t step = 0; step < cfg.steps; ++step) {
    // birth
    std::uint32_t name;
    if (rng.unit() < cfg.alpha) {
      name = next_name++;
      counts.push_back(0);
      birth_step.push_back(step + 1);
    } else {
      name = individuals[rng.below(individuals.size())];
    }
    individuals.push_back(name);
    ++counts[name];
    // death; skipped entirely at mu = 0 so the draw sequence matches
    // simon_generate and the counts coincide seed for seed
    if (cfg.mu > 0 && rng.unit() < cfg.mu) {
      const std::size_t victim = static_cast<std::size_t>(rng.below(individuals.size()));
      --counts[individuals[victim]];
      individuals[victim] = individuals.back();
      individuals.pop_back();
      if (individuals.empty()) {
        throw ExtinctionError(step + 1);
      }
    }
  }
  std::vector<std::pair<std::string, std::uint64_t>> alive;
  for (std::uint32_t id = 0; id < next_name; ++id) {
    if (counts[id] > 0) {
      alive.emplace_back("n" + letter_suffix(id), counts[id]);
    }
  }
  return table_from_counts(alive);
}

void MonkeyConfig::validate() const {
  if (alphabet < 2) {
    throw PreconditionError("MonkeyConfig: need M >= 2");
  }
  if (!(p0 > 0.0) || !(p0 < 1.0)) {
    throw PreconditionError("MonkeyConfig: need 0 < p0 < 1");
  }
  if (length < 1) {
    throw PreconditionError("MonkeyConfig: need length >= 1");
  }
}

namespace {

std::string letter_form(std::uint64_t value, std::size_t alphabet, std::size_t width) {
  // base-M digits rendered as letters; beyond 'z' wraps with a digit suffix
  std::string form;
  for (std::size_t k = 0; k < width; ++k) {
    const std::uint64_t digit = value % alphabet;
    value /= alphabet;
    if (digit < 26) {
      form.push_back(static_cast<char>('a' + digit));
    } else {
      form.push_back('_');
      form += std::to_string(digit);
    }
  }
  std::reverse(form.begin(), form.end());
  return form;
}

}  // namespace

TokenizedText monkey_generate(const MonkeyConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  TokenizedText text;
  text.source_id = "monkey";
  std::unordered_map<std::string, std::uint32_t> ids;
  std::string word;
  auto flush = [&] {
    if (word.empty()) return;
    auto [it, inserted] =
        ids.emplace(word, static_cast<std::uint32_t>(text.lexicon.size()));
    if (inserted) text.lexicon.push_back(word);
    text.tokens.push_back(it->second);
    word.clear();
  };
  for (std::size_t i = 0; i < cfg.length; ++i) {
    if (rng.unit() < cfg.p0) {
      flush();
    } else {
      const std::uint64_t letter = rng.below(cfg.alphabet);
      word += letter_form(letter, cfg.alphabet, 1);
    }
  }
  flush();
  if (text.tokens.empty()) {
    throw EmptyCorpusError();
  }
  text.sentence_bounds.push_back(text.tokens.size());
  return text;
}

double monkey_predicted_z(std::size_t alphabet, double p0) {
  if (alphabet < 2) {
    throw DomainError("monkey_predicted_z: need M >= 2");
  }
  if (!(p0 > 0.0) || !(p0 < 1.0)) {
    throw DomainError("monkey_predicted_z: need 0 < p0 < 1");
  }
  return 1.0 + std::log(1.0 - p0) / std::log(static_cast<double>(alphabet));
}

TokenizedText fixed_length_generate(std::size_t alphabet, std::size_t l,
                                    std::size_t count, std::uint64_t seed) {
  if (alphabet < 2 || l < 1 || count < 1) {
    throw PreconditionError("fixed_length_generate: need M >= 2, l >= 1, T >= 1");
  }
  long double space = 1.0L;
  for (std::size_t k = 0; k < l; ++k) space *= static_cast<long double>(alphabet);
  if (space > static_cast<long double>(1ULL << 40)) {
    throw ResourceError("fixed_length_generate: M^l exceeds the 2^40 guard");
  }
  const std::uint64_t words = static_cast<std::uint64_t>(space);
  Rng rng(seed);
  TokenizedText text;
  text.source_id = "fixed-length";
  std::unordered_map<std::uint64_t, std::uint32_t> ids;
  ids.reserve(std::min<std::uint64_t>(words, count) * 2);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t w = rng.below(words);
    auto [it, inserted] = ids.emplace(w, static_cast<std::uint32_t>(text.lexicon.size()));
    if (inserted) text.lexicon.push_back(letter_form(w, alphabet, l));
    text.tokens.push_back(it->second);
  }
  text.sentence_bounds.push_back(text.tokens.size());
  return text;
}

namespace {

void validate_dist(const DiscreteDist& d, const char* what) {
  if (d.empty()) {
    throw PreconditionError(std::string(what) + ": empty distribution");
  }
  double total = 0;
  for (const auto& [value, prob] : d) {
    if (prob < 0) {
      throw PreconditionError(std::string(what) + ": negative probability");
    }
    total += prob;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw PreconditionError(std::string(what) + ": probabilities must sum to 1");
  }
}

double draw(const DiscreteDist& d, Rng& rng) {
  double u = rng.unit();
  for (const auto& [value, prob] : d) {
    u -= prob;
    if (u < 0) return value;
  }
  return d.back().first;
}

}  // namespace

LangevinResult langevin_simulate(const DiscreteDist& f, const DiscreteDist& g,
                                 std::size_t steps, std::size_t walkers,
                                 std::uint64_t seed, double n0) {
  validate_dist(f, "langevin f(a)");
  validate_dist(g, "langevin g(b)");
  if (steps < 1 || walkers < 1) {
    throw PreconditionError("langevin_simulate: need steps >= 1 and walkers >= 1");
  }
  constexpr double kDivergenceGuard = 1e12;
  LangevinResult out;
  out.final_values.reserve(walkers);
  for (std::size_t w = 0; w < walkers; ++w) {
    Rng rng(derive_seed(seed, w));
    double n = n0;
    bool diverged = false;
    for (std::size_t s = 0; s < steps; ++s) {
      n += draw(f, rng) + draw(g, rng) * n;
      if (std::abs(n) > kDivergenceGuard) {
        diverged = true;
        break;
      }
    }
    if (diverged) {
      ++out.diverged;
    } else {
      out.final_values.push_back(n);
    }
  }
  return out;
}

namespace {

double kesten_moment_minus_one(double gamma, const void* ctx) {
  const auto* g = static_cast<const DiscreteDist*>(ctx);
  double sum = 0;
  for (const auto& [b, prob] : *g) {
    sum += prob * std::pow(1.0 + b, gamma);
  }
  return sum - 1.0;
}

}  // namespace

double kesten_exponent(const DiscreteDist& g, double tol) {
  validate_dist(g, "kesten g(b)");
  for (const auto& [b, prob] : g) {
    if (prob > 0 && 1.0 + b <= 0.0) {
      throw DomainError("kesten_exponent: support requires 1 + b > 0");
    }
  }
  const double lo = 1e-6, hi = 64.0;
  const double flo = kesten_moment_minus_one(lo, &g);
  const double fhi = kesten_moment_minus_one(hi, &g);
  if ((flo > 0) == (fhi > 0)) {
    throw NoRootError("kesten_exponent: no sign change on [1e-6, 64]");
  }
  return bisect(kesten_moment_minus_one, &g, lo, hi, tol);
}

}  // namespace lexstat

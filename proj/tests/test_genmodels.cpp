#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "lexstat/errors.hpp"
#include "lexstat/genmodels.hpp"
#include "lexstat/numerics.hpp"
#include "lexstat/zipf.hpp"

using namespace lexstat;
using namespace lexstat::testing;

TEST_CASE("alpha = 1 forces every token to be distinct") {
  GeneratorConfig cfg;
  cfg.alpha = 1.0;
  cfg.steps = 500;
  cfg.seed = 1;
  const TokenizedText text = simon_generate(cfg);
  CHECK(text.lexicon_size() == text.size());
}

TEST_CASE("generation is deterministic per seed") {
  GeneratorConfig cfg;
  cfg.alpha = 0.1;
  cfg.steps = 5000;
  cfg.seed = 77;
  const TokenizedText a = simon_generate(cfg);
  const TokenizedText b = simon_generate(cfg);
  CHECK(a.tokens == b.tokens);
  cfg.seed = 78;
  CHECK(simon_generate(cfg).tokens != a.tokens);
}

TEST_CASE("occurrence counts always sum to the text length") {
  GeneratorConfig cfg;
  cfg.alpha = 0.07;
  cfg.seed = 5;
  for (std::size_t steps : {100, 1000, 10000}) {
    cfg.steps = steps;
    const OccurrenceTable t = occurrence_table(simon_generate(cfg));
    std::uint64_t total = 0;
    for (const auto& [n, count] : t.histogram) total += n * count;
    REQUIRE(total == steps + cfg.t0);
  }
}

TEST_CASE("constant-rate exponents at reduced scale") {
  // full-scale version runs in the acceptance suite
  const double alpha = 0.1;
  double zsum = 0, zetasum = 0;
  const int seeds = 4;
  for (int seed = 0; seed < seeds; ++seed) {
    GeneratorConfig cfg;
    cfg.alpha = alpha;
    cfg.steps = 200000;
    cfg.seed = static_cast<std::uint64_t>(seed);
    const OccurrenceTable table = occurrence_table(simon_generate(cfg));
    zsum += fit_zipf(table, 50, 1000).exponent;
    zetasum += fit_histogram(table, 1, 100).exponent;
  }
  CHECK(zsum / seeds == doctest::Approx(1.0 - alpha).epsilon(0.08));
  CHECK(zetasum / seeds ==
        doctest::Approx(1.0 + 1.0 / (1.0 - alpha)).epsilon(0.08));
}

TEST_CASE("stationary profile") {
  SUBCASE("P(1) has the closed form alpha/((1-alpha) zeta)") {
    for (double alpha : {0.05, 0.3, 0.7}) {
      const SimonProfile p = simon_profile(1, alpha);
      CHECK(p.exact ==
            doctest::Approx(alpha / (1.0 - alpha) / p.zeta).epsilon(1e-12));
    }
  }
  SUBCASE("power-law approximation converges by n = 100") {
    const double alpha = 0.05;
    const SimonProfile p100 = simon_profile(100, alpha);
    CHECK(p100.exact / p100.approx == doctest::Approx(1.0).epsilon(0.01));
    const SimonProfile p5 = simon_profile(5, alpha);
    CHECK(p5.exact / p5.approx != doctest::Approx(1.0).epsilon(1e-4));
  }
  SUBCASE("n-weighted profile sums to 1") {
    // sum_n n P(n) = 1; partial sum to N plus an asymptotic tail estimate
    const double alpha = 0.4;
    const double zeta = 1.0 + 1.0 / (1.0 - alpha);
    const std::uint64_t cutoff = 100000;
    double sum = 0;
    for (std::uint64_t n = 1; n <= cutoff; ++n) {
      sum += static_cast<double>(n) * simon_profile(n, alpha).exact;
    }
    const double nd = static_cast<double>(cutoff);
    const double tail = alpha / (1.0 - alpha) * std::exp(std::lgamma(zeta)) *
                        (std::pow(nd, 2.0 - zeta) / (zeta - 2.0) +
                         0.5 * std::pow(nd, 1.0 - zeta));
    CHECK(sum + tail == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("nu = 1 reduces the decaying-rate model to the constant-rate one") {
  GeneratorConfig cfg;
  cfg.alpha0 = 0.23;
  cfg.nu = 1.0;
  cfg.steps = 20000;
  cfg.seed = 9;
  const TokenizedText ext = simon_extended_generate(cfg);
  GeneratorConfig plain = cfg;
  plain.alpha = 0.23;
  plain.alpha0 = 0.0;
  const TokenizedText base = simon_generate(plain);
  CHECK(ext.tokens == base.tokens);
}

TEST_CASE("decaying-rate rank exponent at reduced scale") {
  GeneratorConfig cfg;
  cfg.alpha0 = 0.5;
  cfg.nu = 0.5;
  cfg.steps = 400000;
  cfg.seed = 21;
  const OccurrenceTable table = occurrence_table(simon_extended_generate(cfg));
  const PowerLawFit rank = fit_zipf(table, 30, 300);
  CHECK(rank.exponent == doctest::Approx(1.0 / cfg.nu).epsilon(0.12));
}

TEST_CASE("decaying-rate histogram exponent at reduced scale") {
  // nu = 0.8 keeps the lexicon large enough for a dense histogram
  GeneratorConfig cfg;
  cfg.alpha0 = 0.5;
  cfg.nu = 0.8;
  cfg.steps = 400000;
  cfg.seed = 22;
  const OccurrenceTable table = occurrence_table(simon_extended_generate(cfg));
  const PowerLawFit hist = fit_histogram(table, 1, 50);
  CHECK(hist.exponent == doctest::Approx(1.0 + cfg.nu).epsilon(0.08));
}

TEST_CASE("death model with mu = 0 reproduces the constant-rate counts") {
  GeneratorConfig cfg;
  cfg.alpha = 0.15;
  cfg.mu = 0.0;
  cfg.steps = 30000;
  cfg.seed = 4;
  const OccurrenceTable dead = simon_death_generate(cfg);
  const OccurrenceTable text = occurrence_table(simon_generate(cfg));
  REQUIRE(dead.entries.size() == text.entries.size());
  for (std::size_t i = 0; i < dead.entries.size(); ++i) {
    REQUIRE(dead.entries[i].count == text.entries[i].count);
    REQUIRE(dead.entries[i].word_id == text.entries[i].word_id);
  }
}

TEST_CASE("death model population grows at rate 1 - mu") {
  GeneratorConfig cfg;
  cfg.alpha = 0.05;
  cfg.mu = 0.9;
  cfg.steps = 100000;
  cfg.seed = 12;
  const OccurrenceTable table = simon_death_generate(cfg);
  CHECK(static_cast<double>(table.total) ==
        doctest::Approx((1.0 - cfg.mu) * static_cast<double>(cfg.steps)).epsilon(0.05));
}

TEST_CASE("death model histogram slope at reduced scale") {
  GeneratorConfig cfg;
  cfg.alpha = 0.05;
  cfg.mu = 0.3;
  cfg.steps = 300000;
  cfg.seed = 31;
  const OccurrenceTable table = simon_death_generate(cfg);
  const double predicted = 1.0 + (1.0 - cfg.mu) / (1.0 - cfg.alpha - cfg.mu);
  CHECK(fit_histogram(table, 1, 100).exponent ==
        doctest::Approx(predicted).epsilon(0.10));
}

TEST_CASE("random-typing words follow the geometric length law") {
  MonkeyConfig cfg;
  cfg.alphabet = 26;
  cfg.p0 = 0.246;
  cfg.length = 1000000;
  cfg.seed = 2;
  const TokenizedText text = monkey_generate(cfg);
  // chi-square of the token length distribution against Geometric(p0)
  std::map<std::size_t, std::size_t> observed;
  for (std::uint32_t id : text.tokens) ++observed[text.lexicon[id].size()];
  const double total = static_cast<double>(text.tokens.size());
  double chi2 = 0;
  std::size_t bins = 0;
  double tail_expected = total, tail_observed = total;
  for (std::size_t len = 1; len <= 12; ++len) {
    const double p = cfg.p0 * std::pow(1.0 - cfg.p0, static_cast<double>(len - 1));
    const double expect = total * p / (1.0);
    const double got = observed.count(len) ? static_cast<double>(observed[len]) : 0.0;
    chi2 += (got - expect) * (got - expect) / expect;
    ++bins;
    tail_expected -= expect;
    tail_observed -= got;
  }
  if (tail_expected > 5) {
    chi2 += (tail_observed - tail_expected) * (tail_observed - tail_expected) /
            tail_expected;
    ++bins;
  }
  const double p_value = chi_square_sf(chi2, static_cast<double>(bins - 1));
  CHECK(p_value > 0.001);
}

TEST_CASE("word frequencies match the typing probabilities") {
  MonkeyConfig cfg;
  cfg.alphabet = 4;
  cfg.p0 = 0.3;
  cfg.length = 2000000;
  cfg.seed = 6;
  const TokenizedText text = monkey_generate(cfg);
  const OccurrenceTable table = occurrence_table(text);
  // a word of length l is emitted per token slot with probability
  // p0 ((1-p0)/M)^l / (1-p0); the 1/(1-p0) renormalizes away dropped empty runs
  const double tokens = static_cast<double>(text.size());
  std::size_t checked = 0;
  for (const auto& e : table.entries) {
    if (e.count < 5000) break;
    const double predicted =
        cfg.p0 *
        std::pow((1.0 - cfg.p0) / static_cast<double>(cfg.alphabet),
                 static_cast<double>(e.form.size())) /
        (1.0 - cfg.p0);
    CHECK(static_cast<double>(e.count) / tokens ==
          doctest::Approx(predicted).epsilon(0.05));
    ++checked;
  }
  CHECK(checked >= 4);
}

TEST_CASE("random-typing rank curve tracks the predicted exponent") {
  // reduced-scale version of the acceptance check; the staircase needs the
  // binned envelope fit
  MonkeyConfig cfg;
  cfg.alphabet = 26;
  cfg.p0 = 0.246;
  cfg.length = 2000000;
  cfg.seed = 14;
  const OccurrenceTable table = occurrence_table(monkey_generate(cfg));
  const PowerLawFit fit =
      fit_zipf_binned(table, 3, 0.8 * static_cast<double>(table.entries.size()));
  CHECK(std::abs(fit.exponent - monkey_predicted_z(26, 0.246)) < 0.08);
}

TEST_CASE("large p0 makes almost all words single letters") {
  MonkeyConfig cfg;
  cfg.alphabet = 26;
  cfg.p0 = 0.95;
  cfg.length = 200000;
  cfg.seed = 3;
  const TokenizedText text = monkey_generate(cfg);
  std::size_t short_words = 0;
  for (std::uint32_t id : text.tokens) {
    if (text.lexicon[id].size() <= 1) ++short_words;
  }
  CHECK(static_cast<double>(short_words) / static_cast<double>(text.size()) > 0.9);
}

TEST_CASE("predicted rank exponent of random typing") {
  CHECK(monkey_predicted_z(25, 0.2) == doctest::Approx(0.930677).epsilon(1e-5));
  CHECK(monkey_predicted_z(26, 0.246) == doctest::Approx(0.913).epsilon(1e-3));
  // p0 = 1 - 1/M collapses the exponent to zero
  CHECK(monkey_predicted_z(10, 0.9) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(monkey_predicted_z(1, 0.2), DomainError);
  CHECK_THROWS_AS(monkey_predicted_z(26, 0.0), DomainError);
}

TEST_CASE("fixed-length words are binomially balanced") {
  const TokenizedText text = fixed_length_generate(2, 1, 1000000, 8);
  const OccurrenceTable table = occurrence_table(text);
  REQUIRE(table.entries.size() == 2);
  const double half = 500000.0;
  const double sigma = std::sqrt(1000000.0 * 0.25);
  for (const auto& e : table.entries) {
    CHECK(std::abs(static_cast<double>(e.count) - half) < 5.0 * sigma);
  }
}

TEST_CASE("fixed-length count dispersion matches the sampling model") {
  const std::size_t m = 4, l = 4, t = 400000;  // 256 words, <n> ~ 1560
  const TokenizedText text = fixed_length_generate(m, l, t, 17);
  const OccurrenceTable table = occurrence_table(text);
  const double mean_n = static_cast<double>(t) / 256.0;
  double var = 0;
  for (const auto& e : table.entries) {
    var += (static_cast<double>(e.count) - mean_n) * (static_cast<double>(e.count) - mean_n);
  }
  var /= static_cast<double>(table.entries.size());
  CHECK(std::sqrt(var) == doctest::Approx(std::sqrt(mean_n)).epsilon(0.15));
}

TEST_CASE("fixed-length guard rejects huge word spaces") {
  CHECK_THROWS_AS(fixed_length_generate(2, 50, 10, 1), ResourceError);
}

namespace {

// Lack-of-fit of a log-log straight line on the geometrically binned rank
// curve; binning removes per-rank sampling noise so the number measures the
// systematic shape only.
double binned_rank_lack_of_fit(const OccurrenceTable& table) {
  std::vector<double> xs, ys;
  // interior ranks only: both curves have head and discreteness artifacts at
  // the extremes, the systematic shape lives in the middle
  const double v_all = static_cast<double>(table.entries.size());
  double lo = std::max(3.0, 0.02 * v_all);
  const double v = 0.4 * v_all;
  while (lo <= v) {
    const double hi = std::max(lo * 1.5, lo + 1.0);
    double sum_log_n = 0;
    double sum_log_r = 0;
    std::size_t inside = 0;
    for (const auto& e : table.entries) {
      if (e.rank >= lo && e.rank < hi) {
        sum_log_n += std::log(static_cast<double>(e.count));
        sum_log_r += std::log(static_cast<double>(e.rank));
        ++inside;
      }
    }
    if (inside > 0) {
      xs.push_back(std::exp(sum_log_r / static_cast<double>(inside)));
      ys.push_back(std::exp(sum_log_n / static_cast<double>(inside)));
    }
    lo = hi;
  }
  const PowerLawFit fit = fit_loglog(xs, ys, xs.front(), xs.back());
  return fit.rms_residual;
}

}  // namespace

TEST_CASE("fixed-length rank plots are not power laws") {
  // equal T and comparable lexicon sizes; the flat-word curve is an inverse
  // error function, the reinforcement curve a power law
  const std::size_t t = 260000;
  const TokenizedText flat = fixed_length_generate(4, 8, t, 23);
  GeneratorConfig cfg;
  cfg.alpha = 0.2;
  cfg.steps = t;
  cfg.seed = 23;
  const TokenizedText reinforced = simon_generate(cfg);
  const double flat_res = binned_rank_lack_of_fit(occurrence_table(flat));
  const double reinforced_res = binned_rank_lack_of_fit(occurrence_table(reinforced));
  CHECK(flat_res > reinforced_res);
}

TEST_CASE("additive-only dynamics is a plain random walk") {
  const DiscreteDist f = {{1.0, 0.5}, {-0.5, 0.5}};  // <a> = 0.25
  const DiscreteDist g = {{0.0, 1.0}};
  const LangevinResult r = langevin_simulate(f, g, 400, 4000, 19);
  CHECK(r.diverged == 0);
  CHECK(mean_of(r.final_values) == doctest::Approx(0.25 * 400).epsilon(0.05));
}

TEST_CASE("exploding walkers are flagged, not returned") {
  // E[ln(1+b)] > 0: almost every walker crosses the divergence guard
  const DiscreteDist f = {{1.0, 1.0}};
  const DiscreteDist g = {{2.0, 1.0}};
  const LangevinResult r = langevin_simulate(f, g, 200, 50, 3, 1.0);
  CHECK(r.diverged == 50);
  CHECK(r.final_values.empty());
}

TEST_CASE("zero additive noise from zero start stays at zero") {
  const DiscreteDist f = {{0.0, 1.0}};
  const DiscreteDist g = {{1.0, 0.5}, {-0.75, 0.5}};
  const LangevinResult r = langevin_simulate(f, g, 100, 100, 4);
  for (double v : r.final_values) REQUIRE(v == 0.0);
}

TEST_CASE("multiplicative moment equation") {
  SUBCASE("root is found and satisfies the equation to 1e-10") {
    const DiscreteDist g = {{1.0, 0.5}, {-0.75, 0.5}};
    const double gamma = kesten_exponent(g);
    const double residual = 0.5 * std::pow(2.0, gamma) + 0.5 * std::pow(0.25, gamma) - 1.0;
    CHECK(std::abs(residual) < 1e-10);
    CHECK(gamma < 1.0);  // at gamma = 1 the moment is 1.125 > 1
    CHECK(gamma > 0.0);
  }
  SUBCASE("no multiplicative noise has no root") {
    CHECK_THROWS_AS(kesten_exponent({{0.0, 1.0}}), NoRootError);
  }
  SUBCASE("symmetric factors admit no positive root") {
    const double c = 1.7;
    CHECK_THROWS_AS(kesten_exponent({{c - 1.0, 0.5}, {1.0 / c - 1.0, 0.5}}),
                    NoRootError);
  }
}

TEST_CASE("heavy tail of the additive-multiplicative process matches the moment root") {
  const DiscreteDist f = {{1.0, 1.0}};
  const DiscreteDist g = {{1.0, 0.3}, {-0.5, 0.7}};
  const double gamma = kesten_exponent(g);
  const LangevinResult r = langevin_simulate(f, g, 400, 100000, 123, 1.0);
  REQUIRE(r.diverged == 0);
  // complementary CDF slope over the upper decades
  std::vector<double> v = r.final_values;
  std::sort(v.begin(), v.end());
  std::vector<double> xs, ys;
  const double n = static_cast<double>(v.size());
  const double lo = v[static_cast<std::size_t>(0.90 * n)];
  const double hi = v[static_cast<std::size_t>(0.9995 * n)];
  for (double q = 0.90; q < 0.9995; q += 0.005) {
    const double x = v[static_cast<std::size_t>(q * n)];
    xs.push_back(x);
    ys.push_back(1.0 - q);
  }
  const PowerLawFit fit = fit_loglog(xs, ys, lo, hi);
  CHECK(-fit.exponent == doctest::Approx(gamma).epsilon(0.15 / gamma));
}

TEST_CASE("generator preconditions") {
  GeneratorConfig cfg;
  cfg.alpha = 0.0;
  CHECK_THROWS_AS(simon_generate(cfg), PreconditionError);
  cfg.alpha = 0.5;
  cfg.mu = 0.6;
  CHECK_THROWS_AS(simon_death_generate(cfg), PreconditionError);
  cfg.mu = 0.0;
  cfg.steps = 0;
  CHECK_THROWS_AS(simon_generate(cfg), PreconditionError);
}

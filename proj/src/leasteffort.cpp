#include "lexstat/leasteffort.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <numeric>

#include "lexstat/errors.hpp"
#include "lexstat/rng.hpp"

namespace lexstat {

namespace {

double log_base(double x, double base_log) { return std::log(x) / base_log; }

}  // namespace

std::vector<std::size_t> WordMeaningMatrix::column_sums() const {
  std::vector<std::size_t> sigma(meanings_, 0);
  for (std::size_t i = 0; i < words_; ++i) {
    const std::uint8_t* row = cells_.data() + i * meanings_;
    for (std::size_t j = 0; j < meanings_; ++j) {
      sigma[j] += row[j];
    }
  }
  return sigma;
}

std::vector<double> word_probabilities(const WordMeaningMatrix& a) {
  const std::size_t l = a.words(), k = a.meanings();
  const std::vector<std::size_t> sigma = a.column_sums();
  std::vector<double> p(l, 0.0);
  for (std::size_t i = 0; i < l; ++i) {
    double sum = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (a.at(i, j) && sigma[j] > 0) {
        sum += 1.0 / static_cast<double>(sigma[j]);
      }
    }
    p[i] = sum / static_cast<double>(k);
  }
  return p;
}

double speaker_effort(const WordMeaningMatrix& a) {
  if (a.words() < 2) {
    throw PreconditionError("speaker_effort: need l >= 2");
  }
  const double base_log = std::log(static_cast<double>(a.words()));
  double h = 0;
  for (double p : word_probabilities(a)) {
    if (p > 0) h -= p * log_base(p, base_log);
  }
  return h;
}

double hearer_effort(const WordMeaningMatrix& a) {
  const std::size_t l = a.words(), k = a.meanings();
  if (k < 2) {
    throw PreconditionError("hearer_effort: need k >= 2");
  }
  const double base_log = std::log(static_cast<double>(k));
  const std::vector<std::size_t> sigma = a.column_sums();
  const std::vector<double> p = word_probabilities(a);
  double hp = 0;
  for (std::size_t i = 0; i < l; ++i) {
    if (p[i] <= 0) continue;
    double hi = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (!a.at(i, j) || sigma[j] == 0) continue;
      const double joint = 1.0 / (static_cast<double>(k) * static_cast<double>(sigma[j]));
      const double cond = joint / p[i];
      hi -= cond * log_base(cond, base_log);
    }
    hp += p[i] * hi;
  }
  return hp;
}

double cost(const WordMeaningMatrix& a, double lambda) {
  if (!(lambda > 0.0) || !(lambda < 1.0)) {
    throw DomainError("cost: need 0 < lambda < 1");
  }
  return lambda * hearer_effort(a) + (1.0 - lambda) * speaker_effort(a);
}

double word_meaning_information(const WordMeaningMatrix& a) {
  const std::size_t l = a.words(), k = a.meanings();
  const double base_log = std::log(static_cast<double>(l));
  const std::vector<std::size_t> sigma = a.column_sums();
  const std::vector<double> p = word_probabilities(a);
  double conditional_term = 0;
  const double pm = 1.0 / static_cast<double>(k);
  for (std::size_t j = 0; j < k; ++j) {
    if (sigma[j] == 0) continue;
    const double cond = 1.0 / static_cast<double>(sigma[j]);  // p(w|m) on linked words
    // sigma_j equal terms of cond * log cond
    conditional_term += pm * static_cast<double>(sigma[j]) * cond * log_base(cond, base_log);
  }
  double marginal_term = 0;
  for (double pi : p) {
    if (pi > 0) marginal_term += pi * log_base(pi, base_log);
  }
  return conditional_term - marginal_term;
}

double lexicon_fraction(const WordMeaningMatrix& a) {
  const std::vector<double> p = word_probabilities(a);
  std::size_t used = 0;
  for (double pi : p) {
    if (pi > 0) ++used;
  }
  return static_cast<double>(used) / static_cast<double>(a.words());
}

namespace {

// First index >= `from` selected by an independent-Bernoulli(p) scan, via
// geometric skipping; returns npos when the scan leaves [from, n).
std::size_t next_flip(std::size_t from, std::size_t n, double log1mp, Rng& rng) {
  double u;
  do {
    u = rng.unit();
  } while (u <= 0.0);
  const double skip = std::floor(std::log(u) / log1mp);
  if (skip > static_cast<double>(n)) return static_cast<std::size_t>(-1);
  const std::size_t idx = from + static_cast<std::size_t>(skip);
  return idx < n ? idx : static_cast<std::size_t>(-1);
}

}  // namespace

OptimizeResult optimize(std::size_t words, std::size_t meanings, double lambda,
                        std::size_t iterations, double flip_rate, std::uint64_t seed) {
  if (words < 2 || meanings < 2) {
    throw PreconditionError("optimize: need l >= 2 and k >= 2");
  }
  if (iterations < 1) {
    throw PreconditionError("optimize: need iterations >= 1");
  }
  if (!(lambda > 0.0) || !(lambda < 1.0)) {
    throw DomainError("optimize: need 0 < lambda < 1");
  }
  if (flip_rate <= 0.0) {
    flip_rate = 2.0 / static_cast<double>(words * meanings);
  }
  if (flip_rate >= 1.0) {
    throw PreconditionError("optimize: need flip_rate < 1");
  }
  Rng rng(seed);
  WordMeaningMatrix a(words, meanings);
  for (std::size_t i = 0; i < words; ++i) {
    for (std::size_t j = 0; j < meanings; ++j) {
      a.set(i, j, rng.bernoulli(0.5));
    }
  }
  // every meaning must start linked; see the rejection rule below
  {
    std::vector<std::size_t> sigma = a.column_sums();
    for (std::size_t j = 0; j < meanings; ++j) {
      if (sigma[j] == 0) {
        a.set(rng.below(words), j, true);
      }
    }
  }

  const double log1mp = std::log1p(-flip_rate);
  const std::size_t cells = words * meanings;
  std::vector<std::size_t> flips;
  std::vector<std::size_t> sigma = a.column_sums();

  OptimizeResult result;
  result.trajectory.reserve(iterations);
  double current_cost = cost(a, lambda);

  for (std::size_t it = 0; it < iterations; ++it) {
    flips.clear();
    std::size_t idx = next_flip(0, cells, log1mp, rng);
    while (idx != static_cast<std::size_t>(-1)) {
      flips.push_back(idx);
      idx = next_flip(idx + 1, cells, log1mp, rng);
    }
    bool valid = !flips.empty();
    if (valid) {
      for (std::size_t cell : flips) {
        const std::size_t i = cell / meanings, j = cell % meanings;
        const bool was = a.at(i, j);
        a.flip(i, j);
        sigma[j] += was ? -1 : 1;
        if (sigma[j] == 0) valid = false;
      }
      if (valid) {
        const double candidate_cost = cost(a, lambda);
        if (candidate_cost < current_cost) {
          current_cost = candidate_cost;
          result.stall_iteration = it + 1;
          ++result.accepted;
        } else {
          valid = false;
        }
      }
      if (!valid) {
        for (std::size_t cell : flips) {
          const std::size_t i = cell / meanings, j = cell % meanings;
          const bool was = a.at(i, j);
          a.flip(i, j);
          sigma[j] += was ? -1 : 1;
        }
      }
    }
    result.trajectory.push_back(
        {current_cost, word_meaning_information(a), lexicon_fraction(a)});
  }
  result.matrix = std::move(a);
  return result;
}

std::vector<SweepPoint> lambda_sweep(std::size_t words, std::size_t meanings,
                                     const std::vector<double>& lambda_grid,
                                     std::size_t runs_per_lambda,
                                     std::size_t iterations, std::uint64_t seed,
                                     std::size_t threads) {
  if (lambda_grid.empty() || runs_per_lambda < 1) {
    throw PreconditionError("lambda_sweep: need a grid and runs_per_lambda >= 1");
  }
  for (double lam : lambda_grid) {
    if (!(lam > 0.0) || !(lam < 1.0)) {
      throw DomainError("lambda_sweep: grid values must lie in (0, 1)");
    }
  }
  struct RunOut {
    double info, lex, stall;
  };
  auto run_one = [&](std::size_t gi, std::size_t run) -> RunOut {
    const std::uint64_t s = derive_seed(seed, gi * 1000003ULL + run);
    OptimizeResult r = optimize(words, meanings, lambda_grid[gi], iterations, 0.0, s);
    const OptimizeRecord& last = r.trajectory.back();
    return {last.information, last.lexicon, static_cast<double>(r.stall_iteration)};
  };

  const std::size_t total = lambda_grid.size() * runs_per_lambda;
  std::vector<RunOut> outs(total);
  if (threads <= 1) {
    for (std::size_t t = 0; t < total; ++t) {
      outs[t] = run_one(t / runs_per_lambda, t % runs_per_lambda);
    }
  } else {
    std::vector<std::future<void>> futures;
    std::atomic<std::size_t> cursor{0};
    for (std::size_t w = 0; w < threads; ++w) {
      futures.push_back(std::async(std::launch::async, [&] {
        for (std::size_t t = cursor.fetch_add(1); t < total; t = cursor.fetch_add(1)) {
          outs[t] = run_one(t / runs_per_lambda, t % runs_per_lambda);
        }
      }));
    }
    for (auto& f : futures) f.get();
  }

  std::vector<SweepPoint> sweep;
  sweep.reserve(lambda_grid.size());
  for (std::size_t gi = 0; gi < lambda_grid.size(); ++gi) {
    SweepPoint pt;
    pt.lambda = lambda_grid[gi];
    double si = 0, sl = 0, ss = 0, sii = 0, sll = 0;
    for (std::size_t run = 0; run < runs_per_lambda; ++run) {
      const RunOut& o = outs[gi * runs_per_lambda + run];
      si += o.info;
      sl += o.lex;
      ss += o.stall;
      sii += o.info * o.info;
      sll += o.lex * o.lex;
    }
    const double nr = static_cast<double>(runs_per_lambda);
    pt.mean_information = si / nr;
    pt.mean_lexicon = sl / nr;
    pt.mean_stall_iteration = ss / nr;
    pt.std_information = std::sqrt(std::max(0.0, sii / nr - pt.mean_information * pt.mean_information));
    pt.std_lexicon = std::sqrt(std::max(0.0, sll / nr - pt.mean_lexicon * pt.mean_lexicon));
    sweep.push_back(pt);
  }
  return sweep;
}

}  // namespace lexstat

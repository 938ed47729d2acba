#include "lexstat/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lexstat/detail/matchlen.hpp"
#include "lexstat/errors.hpp"
#include "lexstat/numerics.hpp"
#include "lexstat/rng.hpp"

namespace lexstat {

namespace {

void check_normalized(double total, const char* what) {
  if (std::abs(total - 1.0) > 1e-9) {
    throw PreconditionError(std::string(what) + ": distribution must sum to 1");
  }
}

}  // namespace

double entropy(std::span<const double> dist, double base) {
  if (!(base > 1.0)) {
    throw DomainError("entropy: base must exceed 1");
  }
  double total = 0, h = 0;
  for (double p : dist) {
    if (p < 0) {
      throw PreconditionError("entropy: negative probability");
    }
    total += p;
    if (p > 0) h -= p * std::log(p);
  }
  check_normalized(total, "entropy");
  return h / std::log(base);
}

double kl_divergence(std::span<const double> p, std::span<const double> q,
                     double base) {
  if (p.size() != q.size()) {
    throw PreconditionError("kl_divergence: size mismatch");
  }
  double tp = 0, tq = 0, d = 0;
  bool infinite = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0 || q[i] < 0) {
      throw PreconditionError("kl_divergence: negative probability");
    }
    tp += p[i];
    tq += q[i];
    if (p[i] > 0) {
      if (q[i] <= 0) {
        infinite = true;
      } else {
        d += p[i] * std::log(p[i] / q[i]);
      }
    }
  }
  check_normalized(tp, "kl_divergence p");
  check_normalized(tq, "kl_divergence q");
  if (infinite) return std::numeric_limits<double>::infinity();
  return d / std::log(base);
}

double mutual_information(std::span<const double> joint, std::size_t rows,
                          std::size_t cols, double base) {
  if (joint.size() != rows * cols || rows == 0 || cols == 0) {
    throw PreconditionError("mutual_information: bad matrix shape");
  }
  std::vector<double> pr(rows, 0.0), pc(cols, 0.0);
  double total = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = joint[i * cols + j];
      if (v < 0) {
        throw PreconditionError("mutual_information: negative probability");
      }
      pr[i] += v;
      pc[j] += v;
      total += v;
    }
  }
  check_normalized(total, "mutual_information");
  double info = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = joint[i * cols + j];
      if (v > 0) info += v * std::log(v / (pr[i] * pc[j]));
    }
  }
  return info / std::log(base);
}

BlockEntropies block_entropies(std::span<const std::uint32_t> seq,
                               std::size_t alphabet, std::size_t n_max) {
  if (n_max < 1) {
    throw PreconditionError("block_entropies: need n_max >= 1");
  }
  if (seq.empty()) {
    throw PreconditionError("block_entropies: empty sequence");
  }
  std::size_t bits_per_symbol = 1;
  while ((std::uint64_t{1} << bits_per_symbol) < alphabet) ++bits_per_symbol;
  if (bits_per_symbol * n_max > 126) {
    throw PreconditionError("block_entropies: blocks too wide to enumerate");
  }
  BlockEntropies out;
  std::vector<unsigned __int128> blocks;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const bool undersampled =
        n * std::log2(static_cast<double>(alphabet)) >
        std::log2(std::max<double>(1.0, static_cast<double>(seq.size()) / 100.0));
    out.undersampled.push_back(undersampled);
    if (seq.size() < n) {
      out.h.push_back(out.h.empty() ? 0.0 : out.h.back());
      out.f.push_back(0.0);
      continue;
    }
    blocks.clear();
    blocks.reserve(seq.size() - n + 1);
    unsigned __int128 value = 0;
    const unsigned __int128 mask =
        (n * bits_per_symbol >= 128)
            ? ~static_cast<unsigned __int128>(0)
            : ((static_cast<unsigned __int128>(1) << (n * bits_per_symbol)) - 1);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      value = ((value << bits_per_symbol) | seq[i]) & mask;
      if (i + 1 >= n) blocks.push_back(value);
    }
    std::sort(blocks.begin(), blocks.end());
    const double total = static_cast<double>(blocks.size());
    double h = 0;
    std::size_t run = 1;
    for (std::size_t i = 1; i <= blocks.size(); ++i) {
      if (i < blocks.size() && blocks[i] == blocks[i - 1]) {
        ++run;
      } else {
        const double p = static_cast<double>(run) / total;
        h -= xlog2x(p);
        run = 1;
      }
    }
    out.h.push_back(h);
    out.f.push_back(n == 1 ? h : h - out.h[n - 2]);
  }
  return out;
}

BlockEntropies block_entropies(const SymbolSequence& seq, std::size_t n_max) {
  std::vector<std::uint32_t> ids(seq.symbols.begin(), seq.symbols.end());
  return block_entropies(ids, seq.alphabet.size(), n_max);
}

Redundancy redundancy(double h, std::size_t lexicon) {
  if (h < 0 || lexicon < 2) {
    throw PreconditionError("redundancy: need h >= 0 and V >= 2");
  }
  const double h_max = log2_of(static_cast<double>(lexicon));
  Redundancy r;
  r.value = 1.0 - h / h_max;
  if (r.value < 0) {
    r.value = 0;
    r.clamped = true;
  }
  return r;
}

void GuessTable::validate() const {
  for (const auto& [n, q] : rows) {
    if (q.size() != alphabet_size) {
      throw PreconditionError("GuessTable: row length must equal alphabet size");
    }
    double total = 0;
    for (double v : q) {
      if (v < 0) {
        throw PreconditionError("GuessTable: negative fraction");
      }
      total += v;
    }
    check_normalized(total, "GuessTable row");
  }
}

std::pair<double, double> shannon_bounds(const GuessTable& table, std::size_t n) {
  const auto it = table.rows.find(n);
  if (it == table.rows.end()) {
    throw PreconditionError("shannon_bounds: no row for requested n");
  }
  table.validate();
  const std::vector<double>& q = it->second;
  double lower = 0, upper = 0;
  for (std::size_t k = 1; k <= q.size(); ++k) {
    const double qk = q[k - 1];
    const double qk1 = k < q.size() ? q[k] : 0.0;  // q_(A+1) = 0
    lower += static_cast<double>(k) * (qk - qk1) * log2_of(static_cast<double>(k));
    upper -= xlog2x(qk);
  }
  return {lower, upper};
}

namespace {

LzEstimate lz_from_ids(const std::vector<std::uint32_t>& ids) {
  LzEstimate est;
  est.n = ids.size();
  if (ids.size() < 2) {
    throw PreconditionError("lz_entropy_estimate: need at least 2 symbols");
  }
  // single-symbol alphabet short-circuits to zero
  bool constant = true;
  for (std::size_t i = 1; i < ids.size(); ++i) {
    if (ids[i] != ids[0]) {
      constant = false;
      break;
    }
  }
  if (constant) {
    est.h = 0.0;
    est.h_plain = 0.0;
    return est;
  }
  const std::vector<std::int32_t> match = detail::match_lengths(ids);
  const std::size_t n = ids.size();
  // 1-based positions i = 2..n; Lambda_i = match[i-1] + 1
  double ratio_sum = 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t fitted = 0;
  constexpr std::size_t kIMin = 256;
  est.i_min = kIMin;
  for (std::size_t i = 2; i <= n; ++i) {
    const double lg = log2_of(static_cast<double>(i));
    const double y = (static_cast<double>(match[i - 1]) + 1.0) / lg;
    ratio_sum += y;
    if (i >= kIMin) {
      const double x = 1.0 / lg;
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++fitted;
    }
  }
  est.h_plain = static_cast<double>(n - 1) / ratio_sum;
  if (n < 1024 || fitted < 64) {
    est.short_sequence = true;
    est.h = est.h_plain;
    return est;
  }
  const double dn = static_cast<double>(fitted);
  const double denom = dn * sxx - sx * sx;
  const double slope = (dn * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / dn;
  if (intercept > 0) {
    est.h = 1.0 / intercept;
  } else {
    // extrapolation failed (pathological sequence); keep the plain form
    est.short_sequence = true;
    est.h = est.h_plain;
  }
  return est;
}

}  // namespace

LzEstimate lz_entropy_estimate(std::span<const std::uint32_t> seq) {
  return lz_from_ids(std::vector<std::uint32_t>(seq.begin(), seq.end()));
}

LzEstimate lz_entropy_estimate(const SymbolSequence& seq) {
  std::vector<std::uint32_t> ids(seq.symbols.begin(), seq.symbols.end());
  return lz_from_ids(ids);
}

LzEstimate lz_entropy_estimate(const TokenizedText& text) {
  return lz_from_ids(text.tokens);
}

ZipfEntropy zipf_entropy(const OccurrenceTable& table) {
  if (table.entries.empty()) {
    throw PreconditionError("zipf_entropy: empty table");
  }
  ZipfEntropy z;
  const double t = static_cast<double>(table.total);
  double log_multinomial = log_factorial(t);
  double stirling = 0;
  for (const auto& e : table.entries) {
    log_multinomial -= log_factorial(static_cast<double>(e.count));
    stirling -= xlog2x(e.frequency);
  }
  z.h_z_exact = log_multinomial / kLn2 / t;
  z.h_z_stirling = stirling;
  z.h0 = log2_of(static_cast<double>(table.entries.size()));
  return z;
}

EntropyReport word_order_information(const TokenizedText& text) {
  const OccurrenceTable table = occurrence_table(text);
  const ZipfEntropy z = zipf_entropy(table);
  const LzEstimate lz = lz_entropy_estimate(text);
  EntropyReport report;
  report.h = lz.h;
  report.h_z_exact = z.h_z_exact;
  report.h_z_stirling = z.h_z_stirling;
  report.h0 = z.h0;
  report.d_stirling = z.h_z_stirling - lz.h;
  report.d_exact = z.h_z_exact - lz.h;
  if (table.entries.size() >= 2) {
    const Redundancy r = redundancy(std::max(0.0, lz.h), table.entries.size());
    report.redundancy_value = r.value;
    report.redundancy_clamped = r.clamped;
  }
  report.estimator = lz.short_sequence
                         ? "match-length plain ratio (short sequence)"
                         : "match-length intercept extrapolation, i_min=256";
  return report;
}

MarkovLanguage markov_language(double mu1, double mu2) {
  if (!(mu1 > 0) || !(mu1 < 1) || !(mu2 > 0) || !(mu2 < 1)) {
    throw DomainError("markov_language: need 0 < mu1, mu2 < 1");
  }
  MarkovLanguage ml;
  ml.mu1 = mu1;
  ml.mu2 = mu2;
  ml.p1 = (1.0 - mu2) / (2.0 - mu1 - mu2);
  ml.p2 = (1.0 - mu1) / (2.0 - mu1 - mu2);
  if (mu1 + mu2 > 1.0) {
    ml.lambda = 1.0 / std::log(1.0 / (mu1 + mu2 - 1.0));
  }
  ml.h_z = -xlog2x(ml.p1) - xlog2x(ml.p2);
  const auto hb = [](double p) { return -xlog2x(p) - xlog2x(1.0 - p); };
  ml.entropy_rate = ml.p1 * hb(mu1) + ml.p2 * hb(mu2);
  return ml;
}

std::vector<std::uint32_t> markov_generate(const MarkovLanguage& ml,
                                           std::size_t length, std::uint64_t seed) {
  if (length < 1) {
    throw PreconditionError("markov_generate: need length >= 1");
  }
  Rng rng(seed);
  std::vector<std::uint32_t> seq;
  seq.reserve(length);
  std::uint32_t state = rng.unit() < ml.p1 ? 0u : 1u;  // stationary start
  for (std::size_t i = 0; i < length; ++i) {
    seq.push_back(state);
    const double stay = state == 0 ? ml.mu1 : ml.mu2;
    if (rng.unit() >= stay) state ^= 1u;
  }
  return seq;
}

}  // namespace lexstat

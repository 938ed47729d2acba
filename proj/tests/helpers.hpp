#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "lexstat/corpus.hpp"
#include "lexstat/rng.hpp"

namespace lexstat::testing {

// Text with an explicit token sequence; lexicon ids are assigned in
// first-occurrence order like the real tokenizer does.
inline TokenizedText text_from_ids(const std::vector<std::uint32_t>& ids,
                                   std::size_t lexicon_size,
                                   std::vector<std::size_t> bounds = {}) {
  TokenizedText text;
  text.tokens = ids;
  for (std::size_t i = 0; i < lexicon_size; ++i) {
    text.lexicon.push_back("w" + std::to_string(i));
  }
  if (bounds.empty()) bounds.push_back(ids.size());
  text.sentence_bounds = std::move(bounds);
  text.source_id = "synthetic";
  return text;
}

// Length-`total` text where one target word occurs at `occurrences` uniformly
// chosen positions and every other slot holds a unique filler id. The target
// word gets id 0.
inline TokenizedText uniform_placement_text(std::size_t total,
                                            std::size_t occurrences,
                                            std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> slots(total);
  std::iota(slots.begin(), slots.end(), std::size_t{0});
  // partial Fisher-Yates: first `occurrences` entries become the positions
  for (std::size_t i = 0; i < occurrences; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(total - i));
    std::swap(slots[i], slots[j]);
  }
  std::vector<bool> is_target(total, false);
  for (std::size_t i = 0; i < occurrences; ++i) is_target[slots[i]] = true;
  std::vector<std::uint32_t> ids(total);
  std::uint32_t filler = 1;
  for (std::size_t t = 0; t < total; ++t) {
    ids[t] = is_target[t] ? 0u : filler++;
  }
  return text_from_ids(ids, filler);
}

// In-place radix-2 FFT (size must be a power of two).
inline void fft(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = 2.0 * 3.141592653589793238 / static_cast<double>(len) *
                         (inverse ? -1.0 : 1.0);
    const std::complex<double> wbase(std::cos(angle), std::sin(angle));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wbase;
      }
    }
  }
  if (inverse) {
    for (auto& x : a) x /= static_cast<double>(n);
  }
}

// Gaussian series with power spectrum S(f) ~ f^(-beta) via spectral synthesis;
// beta = 1 - gamma gives autocorrelation decay ~ tau^(-gamma).
inline std::vector<double> spectral_noise(std::size_t n_pow2, double beta,
                                          std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::complex<double>> spec(n_pow2, {0.0, 0.0});
  for (std::size_t k = 1; k <= n_pow2 / 2; ++k) {
    const double f = static_cast<double>(k) / static_cast<double>(n_pow2);
    const double amp = std::pow(f, -beta / 2.0);
    const double phase = 2.0 * 3.141592653589793238 * rng.unit();
    const std::complex<double> v =
        amp * std::complex<double>(std::cos(phase), std::sin(phase)) * rng.normal();
    spec[k] = v;
    if (k < n_pow2 / 2) spec[n_pow2 - k] = std::conj(v);
  }
  fft(spec, true);
  std::vector<double> out(n_pow2);
  for (std::size_t i = 0; i < n_pow2; ++i) out[i] = spec[i].real();
  // standardize
  double mean = std::accumulate(out.begin(), out.end(), 0.0) / static_cast<double>(n_pow2);
  double var = 0;
  for (double x : out) var += (x - mean) * (x - mean);
  var /= static_cast<double>(n_pow2);
  const double inv = 1.0 / std::sqrt(var);
  for (double& x : out) x = (x - mean) * inv;
  return out;
}

// Approximate fractional Brownian motion positions by successive random
// additions: midpoint interpolation plus Gaussian noise added to every point,
// with the noise scale shrinking by 2^-H per level. Returns 2^levels + 1
// positions.
inline std::vector<double> fbm_random_additions(std::size_t levels, double hurst,
                                                std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> y = {0.0, rng.normal()};
  double scale = 1.0;
  for (std::size_t level = 0; level < levels; ++level) {
    std::vector<double> next(2 * y.size() - 1);
    for (std::size_t i = 0; i + 1 < y.size(); ++i) {
      next[2 * i] = y[i];
      next[2 * i + 1] = 0.5 * (y[i] + y[i + 1]);
    }
    next.back() = y.back();
    scale *= std::pow(2.0, -hurst);
    for (double& v : next) v += scale * rng.normal();
    y.swap(next);
  }
  return y;
}

// Token stream whose vocabulary drifts between two "styles" on a fixed block
// scale; produces long-range correlated rank sequences.
inline std::vector<std::uint32_t> regime_switching_ids(std::size_t length,
                                                       std::size_t block,
                                                       std::uint32_t vocab_per_style,
                                                       std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint32_t> ids(length);
  bool style = false;
  for (std::size_t t = 0; t < length; ++t) {
    if (t % block == 0) style = rng.bernoulli(0.5);
    const std::uint32_t base = style ? vocab_per_style : 0;
    // Zipf-ish within style: repeat-last with probability 0.3
    if (t > 0 && rng.bernoulli(0.3)) {
      ids[t] = ids[t - 1];
    } else {
      ids[t] = base + static_cast<std::uint32_t>(rng.below(vocab_per_style));
    }
  }
  return ids;
}

inline double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Spearman rank correlation (used for monotone-trend checks).
inline double rank_correlation(const std::vector<double>& x,
                               const std::vector<double>& y) {
  const std::size_t n = x.size();
  auto ranks = [n](const std::vector<double>& v) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return v[a] < v[b];
    });
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[idx[i]] = static_cast<double>(i);
    return r;
  };
  const std::vector<double> rx = ranks(x), ry = ranks(y);
  const double mx = mean_of(rx), my = mean_of(ry);
  double num = 0, dx = 0, dy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (rx[i] - mx) * (ry[i] - my);
    dx += (rx[i] - mx) * (rx[i] - mx);
    dy += (ry[i] - my) * (ry[i] - my);
  }
  return num / std::sqrt(dx * dy);
}

// All C(total, picks) placements, invoking fn with each sorted position set.
template <class Fn>
void for_each_combination(std::size_t total, std::size_t picks, Fn&& fn) {
  std::vector<std::size_t> c(picks);
  std::iota(c.begin(), c.end(), std::size_t{0});
  while (true) {
    fn(static_cast<const std::vector<std::size_t>&>(c));
    std::size_t i = picks;
    while (i > 0) {
      --i;
      if (c[i] + (picks - i) < total) {
        ++c[i];
        for (std::size_t j = i + 1; j < picks; ++j) c[j] = c[j - 1] + 1;
        break;
      }
      if (i == 0) return;
    }
  }
}

}  // namespace lexstat::testing

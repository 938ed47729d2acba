#include "lexstat/detail/matchlen.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace lexstat::detail {

std::vector<std::int32_t> suffix_array(const std::vector<std::uint32_t>& s) {
  const std::int32_t n = static_cast<std::int32_t>(s.size());
  std::vector<std::int32_t> sa(n), rank(n), next_rank(n);
  if (n == 0) return sa;
  std::iota(sa.begin(), sa.end(), 0);
  std::sort(sa.begin(), sa.end(),
            [&](std::int32_t a, std::int32_t b) { return s[a] < s[b]; });
  rank[sa[0]] = 0;
  for (std::int32_t i = 1; i < n; ++i) {
    rank[sa[i]] = rank[sa[i - 1]] + (s[sa[i]] != s[sa[i - 1]] ? 1 : 0);
  }
  std::vector<std::int32_t> cnt(n + 1), by_second(n);
  for (std::int32_t k = 1; k < n; k <<= 1) {
    // order by second key rank[i+k] (absent = smallest), then stable counting
    // sort by first key rank[i]
    std::int32_t p = 0;
    for (std::int32_t i = n - k; i < n; ++i) by_second[p++] = i;
    for (std::int32_t i = 0; i < n; ++i) {
      if (sa[i] >= k) by_second[p++] = sa[i] - k;
    }
    std::fill(cnt.begin(), cnt.end(), 0);
    for (std::int32_t i = 0; i < n; ++i) ++cnt[rank[i] + 1];
    for (std::int32_t i = 0; i < n; ++i) cnt[i + 1] += cnt[i];
    for (std::int32_t i = 0; i < n; ++i) sa[cnt[rank[by_second[i]]]++] = by_second[i];

    next_rank[sa[0]] = 0;
    for (std::int32_t i = 1; i < n; ++i) {
      const std::int32_t a = sa[i - 1], b = sa[i];
      const std::int32_t a2 = a + k < n ? rank[a + k] : -1;
      const std::int32_t b2 = b + k < n ? rank[b + k] : -1;
      next_rank[b] = next_rank[a] + ((rank[a] == rank[b] && a2 == b2) ? 0 : 1);
    }
    rank.swap(next_rank);
    if (rank[sa[n - 1]] == n - 1) break;
  }
  return sa;
}

std::vector<std::int32_t> lcp_array(const std::vector<std::uint32_t>& s,
                                    const std::vector<std::int32_t>& sa) {
  const std::int32_t n = static_cast<std::int32_t>(s.size());
  std::vector<std::int32_t> rank(n), lcp(n > 0 ? n - 1 : 0, 0);
  for (std::int32_t i = 0; i < n; ++i) rank[sa[i]] = i;
  std::int32_t h = 0;
  for (std::int32_t i = 0; i < n; ++i) {
    if (rank[i] + 1 == n) {
      h = 0;
      continue;
    }
    const std::int32_t j = sa[rank[i] + 1];
    while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
    lcp[rank[i]] = h;
    if (h > 0) --h;
  }
  return lcp;
}

namespace {

// Min segment tree over the LCP array.
class MinTree {
 public:
  explicit MinTree(const std::vector<std::int32_t>& values) {
    size_ = 1;
    while (size_ < values.size()) size_ <<= 1;
    tree_.assign(2 * size_, INT32_MAX);
    for (std::size_t i = 0; i < values.size(); ++i) tree_[size_ + i] = values[i];
    for (std::size_t i = size_ - 1; i > 0; --i) {
      tree_[i] = std::min(tree_[2 * i], tree_[2 * i + 1]);
    }
  }

  // min over [lo, hi)
  std::int32_t query(std::size_t lo, std::size_t hi) const {
    std::int32_t best = INT32_MAX;
    for (lo += size_, hi += size_; lo < hi; lo >>= 1, hi >>= 1) {
      if (lo & 1) best = std::min(best, tree_[lo++]);
      if (hi & 1) best = std::min(best, tree_[--hi]);
    }
    return best;
  }

 private:
  std::size_t size_;
  std::vector<std::int32_t> tree_;
};

}  // namespace

std::vector<std::int32_t> match_lengths(const std::vector<std::uint32_t>& s) {
  const std::size_t n = s.size();
  std::vector<std::int32_t> match(n, 0);
  if (n < 2) return match;
  const std::vector<std::int32_t> sa = suffix_array(s);
  const std::vector<std::int32_t> lcp = lcp_array(s, sa);
  std::vector<std::int32_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[sa[i]] = static_cast<std::int32_t>(i);
  const MinTree tree(lcp);
  // longest common prefix of two suffixes = min of lcp between their ranks;
  // the best previous-position match is always one of the nearest inserted
  // neighbors in rank order
  std::set<std::int32_t> seen;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int32_t r = rank[i];
    std::int32_t best = 0;
    const auto it = seen.lower_bound(r);
    if (it != seen.end()) {
      best = std::max(best, tree.query(r, *it));
    }
    if (it != seen.begin()) {
      best = std::max(best, tree.query(*std::prev(it), r));
    }
    match[i] = best;
    seen.insert(r);
  }
  return match;
}

}  // namespace lexstat::detail

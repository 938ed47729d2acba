#pragma once

#include <cstdint>
#include <vector>

namespace lexstat::detail {

// Suffix array by prefix doubling with radix sort; works for any uint32 ids.
std::vector<std::int32_t> suffix_array(const std::vector<std::uint32_t>& s);

// Kasai LCP: lcp[r] = longest common prefix of suffixes ranked r and r+1.
std::vector<std::int32_t> lcp_array(const std::vector<std::uint32_t>& s,
                                    const std::vector<std::int32_t>& sa);

// match[i] = length of the longest prefix of s[i..] that also occurs starting
// at some j < i (the occurrence may overlap position i). match[0] = 0.
std::vector<std::int32_t> match_lengths(const std::vector<std::uint32_t>& s);

}  // namespace lexstat::detail

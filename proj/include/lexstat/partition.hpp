#pragma once

#include <cstdint>
#include <vector>

#include "lexstat/corpus.hpp"

namespace lexstat {

// Word occurrence counts over a partition of a text into M parts. For the
// equal-split constructor the text is truncated at the largest multiple of M
// below T and every part has size s = T/M (post-truncation). The bounds
// constructor supports unequal parts (chapters, documents).
struct PartitionProfile {
  std::size_t parts = 0;                              // M
  std::size_t part_size = 0;                          // s, 0 when parts are unequal
  std::vector<std::size_t> part_lengths;              // T_m
  std::size_t truncated_length = 0;                   // sum of part lengths
  // counts[i] lists (part index, n_i^m) pairs for word id i, part index asc
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> counts;
  std::vector<std::uint64_t> word_totals;             // n_i post-truncation
  bool equal_parts = true;

  bool has_word(std::uint32_t word_id) const {
    return word_id < word_totals.size() && word_totals[word_id] > 0;
  }
};

// Equal split into M parts (1 <= M <= T), truncation rule as above.
PartitionProfile partition(const TokenizedText& text, std::size_t parts);

// Partition given explicit end positions (strictly increasing, last == T),
// e.g. chapter bounds or document boundaries.
PartitionProfile partition_from_bounds(const TokenizedText& text,
                                       const std::vector<std::size_t>& end_positions);

}  // namespace lexstat

#include "lexstat/partition.hpp"

#include <algorithm>

#include "lexstat/errors.hpp"

namespace lexstat {

namespace {

PartitionProfile build(const TokenizedText& text,
                       const std::vector<std::size_t>& ends, bool equal,
                       std::size_t part_size) {
  PartitionProfile profile;
  profile.parts = ends.size();
  profile.part_size = equal ? part_size : 0;
  profile.equal_parts = equal;
  profile.truncated_length = ends.back();
  std::size_t prev = 0;
  for (std::size_t e : ends) {
    profile.part_lengths.push_back(e - prev);
    prev = e;
  }
  profile.counts.resize(text.lexicon.size());
  profile.word_totals.assign(text.lexicon.size(), 0);
  std::size_t part = 0;
  for (std::size_t t = 0; t < ends.back(); ++t) {
    while (t >= ends[part]) ++part;
    auto& list = profile.counts[text.tokens[t]];
    if (!list.empty() && list.back().first == part) {
      ++list.back().second;
    } else {
      list.emplace_back(static_cast<std::uint32_t>(part), 1u);
    }
    ++profile.word_totals[text.tokens[t]];
  }
  return profile;
}

}  // namespace

PartitionProfile partition(const TokenizedText& text, std::size_t parts) {
  const std::size_t total = text.tokens.size();
  if (parts < 1 || parts > total) {
    throw PreconditionError("partition: need 1 <= M <= T");
  }
  const std::size_t s = total / parts;
  std::vector<std::size_t> ends;
  ends.reserve(parts);
  for (std::size_t m = 1; m <= parts; ++m) ends.push_back(m * s);
  return build(text, ends, true, s);
}

PartitionProfile partition_from_bounds(const TokenizedText& text,
                                       const std::vector<std::size_t>& end_positions) {
  if (end_positions.empty()) {
    throw PreconditionError("partition_from_bounds: no bounds");
  }
  std::size_t prev = 0;
  for (std::size_t e : end_positions) {
    if (e <= prev || e > text.tokens.size()) {
      throw PreconditionError("partition_from_bounds: bounds must be strictly increasing and <= T");
    }
    prev = e;
  }
  if (end_positions.back() != text.tokens.size()) {
    throw PreconditionError("partition_from_bounds: last bound must equal T");
  }
  return build(text, end_positions, false, 0);
}

}  // namespace lexstat

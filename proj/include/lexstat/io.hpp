#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lexstat/corpus.hpp"
#include "lexstat/infotheory.hpp"

namespace lexstat {

inline constexpr const char* kToolName = "lexstat";
inline constexpr const char* kToolVersion = "0.1.0";

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

// FNV-1a 64 digest of raw bytes, rendered as "fnv1a:<hex>"; embedded in every
// artifact for reproducibility checks.
std::string content_digest(std::string_view bytes);

// Command provenance carried at the top of every output artifact.
struct Provenance {
  std::string command;
  std::string input_digest;
  std::optional<std::uint64_t> seed;

  std::string csv_header() const;  // '#'-prefixed comment lines
};

// Fixed 12-significant-digit formatting used by all CSV payloads.
std::string format_number(double value);

// Token serialization: a .tokens file with one surface form per line and a
// blank line at each sentence boundary, plus a .json sidecar header with
// {T, V, source_id}.
void save_tokens(const TokenizedText& text, const std::filesystem::path& base,
                 const Provenance& prov);
TokenizedText load_tokens(const std::filesystem::path& base);

// Guess-table CSV rows: n, k, q (header line optional).
GuessTable load_guess_table(const std::filesystem::path& path,
                            std::size_t alphabet_size = 27);

// One end-position per line (chapter bounds files).
std::vector<std::size_t> load_bounds(const std::filesystem::path& path);

}  // namespace lexstat

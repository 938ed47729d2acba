#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lexstat {

// A text as a sequence of word ids. Positions run t = 1..T in the analyses;
// storage is 0-based. sentence_bounds holds end positions (number of tokens up
// to and including each sentence), strictly increasing, last element == T.
struct TokenizedText {
  std::vector<std::uint32_t> tokens;
  std::vector<std::string> lexicon;
  std::vector<std::size_t> sentence_bounds;
  std::string source_id;

  std::size_t size() const { return tokens.size(); }            // T
  std::size_t lexicon_size() const { return lexicon.size(); }   // V
};

// A text as a sequence over a small fixed alphabet (letters27 / symbols32 /
// user alphabets such as DNA).
struct SymbolSequence {
  std::vector<std::uint8_t> symbols;
  std::vector<std::string> alphabet;
  std::string source_id;

  std::size_t size() const { return symbols.size(); }
  std::size_t alphabet_size() const { return alphabet.size(); }
};

enum class TokenScheme { words, letters27, symbols32 };
enum class ShuffleLevel { symbols, words, sentences };

// Word tokenization: maximal runs of letters (ASCII plus Latin-1 and Latin
// Extended-A), lowercased, with apostrophes kept word-internal. Sentence
// boundaries fall after . ! ? followed by whitespace. Throws EmptyCorpusError
// when nothing survives.
TokenizedText tokenize_words(std::string_view raw, std::string source_id = "");

// letters27: a-z plus the space; whitespace runs collapse to one space, every
// other character is dropped. symbols32 additionally keeps . , ( ) and maps
// digits to the numeral symbol #.
SymbolSequence tokenize_symbols(std::string_view raw, TokenScheme scheme,
                                std::string source_id = "");

// Builds a SymbolSequence over an explicit single-character alphabet (e.g.
// "ATCG"); characters not in the alphabet are dropped.
SymbolSequence symbols_from_alphabet(std::string_view raw, std::string_view alphabet,
                                     std::string source_id = "");

TokenizedText shuffle(const TokenizedText& text, ShuffleLevel level,
                      std::uint64_t seed);
SymbolSequence shuffle(const SymbolSequence& seq, ShuffleLevel level,
                       std::uint64_t seed);

struct WordLengthStats {
  std::map<std::size_t, double> p;  // distribution over letters per occurrence
  double mean = 0.0;
  double stddev = 0.0;
  double entropy_bits = 0.0;
};

WordLengthStats word_length_stats(const TokenizedText& text);

// Consecutive non-overlapping l-grams starting at `offset` become the words of
// a TokenizedText; the trailing remainder is dropped.
TokenizedText ngrams(const SymbolSequence& seq, std::size_t l, std::size_t offset);

// Number of letter codepoints in a surface form (apostrophes excluded).
std::size_t letter_count(std::string_view form);

}  // namespace lexstat

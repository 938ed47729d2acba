#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>

#include "helpers.hpp"
#include "lexstat/corpus.hpp"
#include "lexstat/errors.hpp"
#include "lexstat/io.hpp"
#include "lexstat/rng.hpp"
#include "lexstat/zipf.hpp"

using namespace lexstat;

TEST_CASE("letters27 tokenization of the opening of Moby Dick") {
  const SymbolSequence seq = tokenize_symbols("Call me Ishmael.", TokenScheme::letters27);
  std::string rendered;
  for (std::uint8_t s : seq.symbols) rendered += seq.alphabet[s];
  CHECK(rendered == "call me ishmael");
  CHECK(seq.alphabet.size() == 27);
}

TEST_CASE("empty input raises the empty-corpus error") {
  CHECK_THROWS_AS(tokenize_words(""), EmptyCorpusError);
  CHECK_THROWS_AS(tokenize_words("123 456 --"), EmptyCorpusError);
  CHECK_THROWS_AS(tokenize_symbols("", TokenScheme::letters27), EmptyCorpusError);
}

TEST_CASE("word tokenization identity case") {
  const TokenizedText text = tokenize_words("a b a");
  CHECK(text.tokens == std::vector<std::uint32_t>{0, 1, 0});
  CHECK(text.lexicon_size() == 2);
  CHECK(text.size() == 3);
  CHECK(text.sentence_bounds == std::vector<std::size_t>{3});
}

TEST_CASE("word tokenization details") {
  SUBCASE("lowercasing and apostrophes") {
    const TokenizedText text = tokenize_words("Don't stop, don't!");
    CHECK(text.lexicon == std::vector<std::string>{"don't", "stop"});
    CHECK(text.tokens == std::vector<std::uint32_t>{0, 1, 0});
  }
  SUBCASE("trailing apostrophe is not kept") {
    const TokenizedText text = tokenize_words("dogs' bones");
    CHECK(text.lexicon == std::vector<std::string>{"dogs", "bones"});
  }
  SUBCASE("accented letters stay inside words and are lowercased") {
    // "\xC3\x86neid qu\xC3\xA6 na\xC3\xAFve" is UTF-8 for AEneid (ligature),
    // quae (ligature), naive (diaeresis)
    const TokenizedText text = tokenize_words("\xC3\x86neid qu\xC3\xA6 na\xC3\xAFve");
    CHECK(text.lexicon_size() == 3);
    CHECK(text.lexicon[0] == "\xC3\xA6neid");
    CHECK(text.lexicon[1] == "qu\xC3\xA6");
    CHECK(text.lexicon[2] == "na\xC3\xAFve");
  }
  SUBCASE("sentence bounds after . ! ? followed by whitespace") {
    const TokenizedText text = tokenize_words("One two. Three! Four? five");
    CHECK(text.sentence_bounds == std::vector<std::size_t>{2, 3, 4, 5});
  }
  SUBCASE("decimal points do not break sentences") {
    const TokenizedText text = tokenize_words("pi is 3.14 roughly");
    CHECK(text.sentence_bounds == std::vector<std::size_t>{3});
  }
}

TEST_CASE("symbols32 alphabet and digit folding") {
  const SymbolSequence seq =
      tokenize_symbols("Ab (3,14). #x", TokenScheme::symbols32);
  std::string rendered;
  for (std::uint8_t s : seq.symbols) rendered += seq.alphabet[s];
  CHECK(rendered == "ab (#,##). #x");
  CHECK(seq.alphabet.size() == 32);
}

TEST_CASE("word shuffle preserves the occurrence table") {
  const TokenizedText text = tokenize_words(
      "the cat sat on the mat. the dog sat on the log. cats and dogs.");
  const TokenizedText shuffled = shuffle(text, ShuffleLevel::words, 99);
  const OccurrenceTable before = occurrence_table(text);
  const OccurrenceTable after = occurrence_table(shuffled);
  REQUIRE(before.entries.size() == after.entries.size());
  // ranks of tied counts may legitimately reorder; the (form -> count) map
  // itself must be unchanged
  auto count_map = [](const OccurrenceTable& t) {
    std::map<std::string, std::uint64_t> m;
    for (const auto& e : t.entries) m[e.form] = e.count;
    return m;
  };
  CHECK(count_map(before) == count_map(after));
  for (std::size_t i = 0; i < before.entries.size(); ++i) {
    REQUIRE(before.entries[i].count == after.entries[i].count);
  }
}

TEST_CASE("sentence shuffle preserves the multiset of sentences") {
  const TokenizedText text =
      tokenize_words("one two three. four five. six. seven eight nine ten.");
  const TokenizedText shuffled = shuffle(text, ShuffleLevel::sentences, 1234);
  auto sentences = [](const TokenizedText& t) {
    std::multiset<std::vector<std::string>> out;
    std::size_t prev = 0;
    for (std::size_t b : t.sentence_bounds) {
      std::vector<std::string> s;
      for (std::size_t i = prev; i < b; ++i) s.push_back(t.lexicon[t.tokens[i]]);
      out.insert(s);
      prev = b;
    }
    return out;
  };
  CHECK(sentences(text) == sentences(shuffled));
  CHECK(shuffled.sentence_bounds.back() == text.tokens.size());
}

TEST_CASE("same seed gives identical shuffles, different seeds differ") {
  const TokenizedText text = tokenize_words(
      "a b c d e f g h i j k l m n o p q r s t u v w x y z");
  const TokenizedText s1 = shuffle(text, ShuffleLevel::words, 7);
  const TokenizedText s2 = shuffle(text, ShuffleLevel::words, 7);
  const TokenizedText s3 = shuffle(text, ShuffleLevel::words, 8);
  CHECK(s1.tokens == s2.tokens);
  CHECK(s1.tokens != s3.tokens);
}

TEST_CASE("sentence shuffle without bounds is a precondition error") {
  TokenizedText text = tokenize_words("a b c. d e.");
  text.sentence_bounds.clear();
  CHECK_THROWS_AS(shuffle(text, ShuffleLevel::sentences, 1), PreconditionError);
}

TEST_CASE("symbol-level shuffle of a symbol sequence preserves counts") {
  const SymbolSequence seq =
      tokenize_symbols("the quick brown fox jumps over the lazy dog",
                       TokenScheme::letters27);
  const SymbolSequence shuffled = shuffle(seq, ShuffleLevel::symbols, 5);
  std::vector<std::uint8_t> a = seq.symbols, b = shuffled.symbols;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);
}

TEST_CASE("word-level shuffle of a symbol sequence preserves chunk multiset") {
  const SymbolSequence seq =
      tokenize_symbols("hello world Hello again world", TokenScheme::letters27);
  const SymbolSequence shuffled = shuffle(seq, ShuffleLevel::words, 3);
  auto chunks = [](const SymbolSequence& s) {
    std::multiset<std::string> out;
    std::string cur;
    for (std::uint8_t id : s.symbols) {
      if (s.alphabet[id] == " ") {
        out.insert(cur);
        cur.clear();
      } else {
        cur += s.alphabet[id];
      }
    }
    out.insert(cur);
    return out;
  };
  CHECK(chunks(seq) == chunks(shuffled));
  CHECK(seq.symbols.size() == shuffled.symbols.size());
}

TEST_CASE("word length statistics") {
  SUBCASE("degenerate distribution") {
    const WordLengthStats s = word_length_stats(tokenize_words("aa aa aa"));
    CHECK(s.p.at(2) == doctest::Approx(1.0));
    CHECK(s.mean == doctest::Approx(2.0));
    CHECK(s.stddev == doctest::Approx(0.0));
    CHECK(s.entropy_bits == doctest::Approx(0.0));
  }
  SUBCASE("symmetric two-point distribution") {
    const WordLengthStats s = word_length_stats(tokenize_words("a bb a bb"));
    CHECK(s.mean == doctest::Approx(1.5));
    CHECK(s.entropy_bits == doctest::Approx(1.0));
  }
  SUBCASE("occurrences weight the distribution, not types") {
    const WordLengthStats s = word_length_stats(tokenize_words("a a a bb"));
    CHECK(s.p.at(1) == doctest::Approx(0.75));
    CHECK(s.p.at(2) == doctest::Approx(0.25));
  }
}

TEST_CASE("ngrams over a DNA-style alphabet") {
  const SymbolSequence seq = symbols_from_alphabet("ATCG", "ATCG");
  SUBCASE("offset 0") {
    const TokenizedText t = ngrams(seq, 2, 0);
    CHECK(t.lexicon == std::vector<std::string>{"AT", "CG"});
    CHECK(t.tokens.size() == 2);
  }
  SUBCASE("offset 1 drops the remainder") {
    const TokenizedText t = ngrams(seq, 2, 1);
    CHECK(t.lexicon == std::vector<std::string>{"TC"});
    CHECK(t.tokens.size() == 1);
  }
  SUBCASE("l = 1 is the identity") {
    const TokenizedText t = ngrams(seq, 1, 0);
    CHECK(t.tokens.size() == 4);
    CHECK(t.lexicon_size() <= seq.alphabet_size());
  }
  SUBCASE("l beyond the sequence is rejected") {
    CHECK_THROWS_AS(ngrams(seq, 5, 0), PreconditionError);
    CHECK_THROWS_AS(ngrams(seq, 2, 2), PreconditionError);
  }
}

TEST_CASE("token counts over the lexicon sum to T") {
  const TokenizedText text = tokenize_words(
      "it was the best of times, it was the worst of times.");
  const OccurrenceTable table = occurrence_table(text);
  std::uint64_t total = 0;
  for (const auto& e : table.entries) total += e.count;
  CHECK(total == text.size());
}

TEST_CASE("tokenizers survive arbitrary byte garbage") {
  // malformed UTF-8 must never crash or produce out-of-range ids
  lexstat::Rng rng(987);
  for (int trial = 0; trial < 200; ++trial) {
    std::string junk;
    const std::size_t len = 1 + rng.below(300);
    for (std::size_t i = 0; i < len; ++i) {
      junk.push_back(static_cast<char>(rng.below(256)));
    }
    try {
      const TokenizedText text = tokenize_words(junk);
      REQUIRE(text.size() >= 1);
      for (std::uint32_t id : text.tokens) {
        REQUIRE(id < text.lexicon_size());
      }
      REQUIRE(text.sentence_bounds.back() == text.size());
    } catch (const EmptyCorpusError&) {
      // acceptable: nothing tokenizable in the junk
    }
    try {
      const SymbolSequence seq = tokenize_symbols(junk, TokenScheme::symbols32);
      for (std::uint8_t s : seq.symbols) {
        REQUIRE(s < seq.alphabet_size());
      }
    } catch (const EmptyCorpusError&) {
    }
  }
}

TEST_CASE("tokenize is deterministic and survives re-serialization") {
  const std::string raw =
      "He was not gone. Far from it! The dog's bark said so; twice, in fact.";
  const TokenizedText a = tokenize_words(raw);
  const TokenizedText b = tokenize_words(raw);
  CHECK(a.tokens == b.tokens);
  CHECK(a.lexicon == b.lexicon);

  const auto base = std::filesystem::temp_directory_path() / "lexstat_corpus_roundtrip";
  save_tokens(a, base, Provenance{});
  const TokenizedText loaded = load_tokens(base);
  CHECK(loaded.tokens == a.tokens);
  CHECK(loaded.lexicon == a.lexicon);
  CHECK(loaded.sentence_bounds == a.sentence_bounds);

  // re-tokenizing the serialized body also reproduces the token stream
  const TokenizedText again = tokenize_words(read_file(base.string() + ".tokens"));
  CHECK(again.tokens == a.tokens);
  CHECK(again.lexicon == a.lexicon);
  std::filesystem::remove(base.string() + ".tokens");
  std::filesystem::remove(base.string() + ".json");
}

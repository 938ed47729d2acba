#include "lexstat/corpus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_map>
#include <utility>

#include "lexstat/errors.hpp"
#include "lexstat/numerics.hpp"
#include "lexstat/rng.hpp"

namespace lexstat {

namespace {

constexpr char32_t kInvalid = 0xFFFD;

// Minimal UTF-8 decoder; malformed bytes come back as U+FFFD (a non-letter).
char32_t next_codepoint(std::string_view s, std::size_t& i) {
  const auto byte = [&](std::size_t k) -> unsigned {
    return static_cast<unsigned char>(s[k]);
  };
  const unsigned b0 = byte(i);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  auto cont = [&](std::size_t k) {
    return k < s.size() && (byte(k) & 0xC0u) == 0x80u;
  };
  if ((b0 & 0xE0u) == 0xC0u && cont(i + 1)) {
    const char32_t cp = ((b0 & 0x1Fu) << 6) | (byte(i + 1) & 0x3Fu);
    i += 2;
    return cp < 0x80 ? kInvalid : cp;
  }
  if ((b0 & 0xF0u) == 0xE0u && cont(i + 1) && cont(i + 2)) {
    const char32_t cp =
        ((b0 & 0x0Fu) << 12) | ((byte(i + 1) & 0x3Fu) << 6) | (byte(i + 2) & 0x3Fu);
    i += 3;
    return cp < 0x800 ? kInvalid : cp;
  }
  if ((b0 & 0xF8u) == 0xF0u && cont(i + 1) && cont(i + 2) && cont(i + 3)) {
    const char32_t cp = ((b0 & 0x07u) << 18) | ((byte(i + 1) & 0x3Fu) << 12) |
                        ((byte(i + 2) & 0x3Fu) << 6) | (byte(i + 3) & 0x3Fu);
    i += 4;
    return cp < 0x10000 ? kInvalid : cp;
  }
  ++i;
  return kInvalid;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Letter coverage: ASCII, Latin-1 supplement, Latin Extended-A. Enough for
// the English/Spanish/Latin/German/French/Finnish material this tool targets.
bool is_letter_cp(char32_t cp) {
  if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
  if (cp >= 0xC0 && cp <= 0xFF && cp != 0xD7 && cp != 0xF7) return true;
  if (cp >= 0x100 && cp <= 0x17F) return true;
  return false;
}

char32_t lower_cp(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  if (cp >= 0x100 && cp <= 0x17F) {
    if (cp == 0x130) return 'i';    // dotted capital I
    if (cp == 0x131) return cp;     // dotless i is already lowercase
    if (cp == 0x178) return 0xFF;   // capital Y with diaeresis
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  return cp;
}

bool is_space_cp(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' ||
         cp == '\v' || cp == 0xA0 || cp == 0x2028 || cp == 0x2029;
}

bool is_apostrophe(char32_t cp) { return cp == '\'' || cp == 0x2019; }

struct Interner {
  std::unordered_map<std::string, std::uint32_t> ids;
  std::vector<std::string> forms;

  std::uint32_t intern(std::string&& form) {
    auto it = ids.find(form);
    if (it != ids.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(forms.size());
    ids.emplace(form, id);
    forms.push_back(std::move(form));
    return id;
  }
};

}  // namespace

std::size_t letter_count(std::string_view form) {
  std::size_t i = 0, n = 0;
  while (i < form.size()) {
    const char32_t cp = next_codepoint(form, i);
    if (is_letter_cp(cp)) ++n;
  }
  return n;
}

TokenizedText tokenize_words(std::string_view raw, std::string source_id) {
  TokenizedText text;
  text.source_id = std::move(source_id);
  Interner interner;

  std::string word;
  std::size_t i = 0;
  std::size_t last_bound = 0;
  bool pending_sentence_end = false;

  auto flush_word = [&] {
    if (word.empty()) return;
    // trailing apostrophes were only kept speculatively
    while (!word.empty() && word.back() == '\'') word.pop_back();
    if (!word.empty()) {
      text.tokens.push_back(interner.intern(std::move(word)));
    }
    word.clear();
  };
  auto commit_sentence = [&] {
    if (text.tokens.size() > last_bound) {
      text.sentence_bounds.push_back(text.tokens.size());
      last_bound = text.tokens.size();
    }
  };

  while (i < raw.size()) {
    const char32_t cp = next_codepoint(raw, i);
    if (is_letter_cp(cp)) {
      if (pending_sentence_end) {
        commit_sentence();
        pending_sentence_end = false;
      }
      append_utf8(word, lower_cp(cp));
      continue;
    }
    if (is_apostrophe(cp) && !word.empty()) {
      // keep only if the next codepoint continues the word
      std::size_t j = i;
      if (j < raw.size() && is_letter_cp(next_codepoint(raw, j))) {
        word.push_back('\'');
        continue;
      }
    }
    flush_word();
    if (cp == '.' || cp == '!' || cp == '?') {
      std::size_t j = i;
      const bool at_end = j >= raw.size();
      const char32_t next = at_end ? U' ' : next_codepoint(raw, j);
      if (at_end || is_space_cp(next)) {
        pending_sentence_end = true;
      }
    }
  }
  flush_word();
  if (text.tokens.empty()) {
    throw EmptyCorpusError();
  }
  if (last_bound != text.tokens.size()) {
    text.sentence_bounds.push_back(text.tokens.size());
  }
  text.lexicon = std::move(interner.forms);
  return text;
}

SymbolSequence tokenize_symbols(std::string_view raw, TokenScheme scheme,
                                std::string source_id) {
  if (scheme == TokenScheme::words) {
    throw PreconditionError("tokenize_symbols: use tokenize_words for the words scheme");
  }
  SymbolSequence seq;
  seq.source_id = std::move(source_id);
  const bool full = scheme == TokenScheme::symbols32;
  for (char c = 'a'; c <= 'z'; ++c) seq.alphabet.emplace_back(1, c);
  seq.alphabet.emplace_back(" ");
  std::uint8_t id_period = 0, id_comma = 0, id_open = 0, id_close = 0, id_hash = 0;
  if (full) {
    id_period = static_cast<std::uint8_t>(seq.alphabet.size());
    seq.alphabet.emplace_back(".");
    id_comma = static_cast<std::uint8_t>(seq.alphabet.size());
    seq.alphabet.emplace_back(",");
    id_open = static_cast<std::uint8_t>(seq.alphabet.size());
    seq.alphabet.emplace_back("(");
    id_close = static_cast<std::uint8_t>(seq.alphabet.size());
    seq.alphabet.emplace_back(")");
    id_hash = static_cast<std::uint8_t>(seq.alphabet.size());
    seq.alphabet.emplace_back("#");
  }
  const std::uint8_t id_space = 26;

  std::size_t i = 0;
  bool last_was_space = true;  // also trims leading spaces
  auto push = [&](std::uint8_t id) {
    seq.symbols.push_back(id);
    last_was_space = (id == id_space);
  };
  while (i < raw.size()) {
    char32_t cp = lower_cp(next_codepoint(raw, i));
    if (cp >= 'a' && cp <= 'z') {
      push(static_cast<std::uint8_t>(cp - 'a'));
    } else if (is_space_cp(cp)) {
      if (!last_was_space) push(id_space);
    } else if (full) {
      if (cp == '.') {
        push(id_period);
      } else if (cp == ',') {
        push(id_comma);
      } else if (cp == '(') {
        push(id_open);
      } else if (cp == ')') {
        push(id_close);
      } else if (cp == '#' || (cp >= '0' && cp <= '9')) {
        push(id_hash);
      }
    }
  }
  while (!seq.symbols.empty() && seq.symbols.back() == id_space) {
    seq.symbols.pop_back();
  }
  if (seq.symbols.empty()) {
    throw EmptyCorpusError();
  }
  return seq;
}

SymbolSequence symbols_from_alphabet(std::string_view raw, std::string_view alphabet,
                                     std::string source_id) {
  if (alphabet.empty() || alphabet.size() > 255) {
    throw PreconditionError("symbols_from_alphabet: alphabet size must be 1..255");
  }
  SymbolSequence seq;
  seq.source_id = std::move(source_id);
  std::array<int, 256> lut;
  lut.fill(-1);
  for (std::size_t k = 0; k < alphabet.size(); ++k) {
    seq.alphabet.emplace_back(1, alphabet[k]);
    lut[static_cast<unsigned char>(alphabet[k])] = static_cast<int>(k);
  }
  for (char c : raw) {
    const int id = lut[static_cast<unsigned char>(c)];
    if (id >= 0) seq.symbols.push_back(static_cast<std::uint8_t>(id));
  }
  if (seq.symbols.empty()) {
    throw EmptyCorpusError();
  }
  return seq;
}

namespace {

// Permutes the blocks [0,b1), [b1,b2), ... given by end positions.
template <class T>
std::vector<T> shuffle_blocks(const std::vector<T>& data,
                              const std::vector<std::size_t>& bounds, Rng& rng,
                              std::vector<std::size_t>* new_bounds) {
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  std::size_t prev = 0;
  for (std::size_t b : bounds) {
    spans.emplace_back(prev, b);
    prev = b;
  }
  rng.shuffle(spans);
  std::vector<T> out;
  out.reserve(data.size());
  if (new_bounds != nullptr) new_bounds->clear();
  for (const auto& [lo, hi] : spans) {
    out.insert(out.end(), data.begin() + lo, data.begin() + hi);
    if (new_bounds != nullptr) new_bounds->push_back(out.size());
  }
  return out;
}

}  // namespace

TokenizedText shuffle(const TokenizedText& text, ShuffleLevel level,
                      std::uint64_t seed) {
  if (text.tokens.empty()) {
    throw PreconditionError("shuffle: empty text");
  }
  Rng rng(seed);
  TokenizedText out = text;
  switch (level) {
    case ShuffleLevel::symbols:
      throw PreconditionError("shuffle: symbols level requires a SymbolSequence");
    case ShuffleLevel::words:
      rng.shuffle(out.tokens);
      break;
    case ShuffleLevel::sentences: {
      if (text.sentence_bounds.empty() ||
          text.sentence_bounds.back() != text.tokens.size()) {
        throw PreconditionError("shuffle: sentence bounds missing or inconsistent");
      }
      out.tokens =
          shuffle_blocks(text.tokens, text.sentence_bounds, rng, &out.sentence_bounds);
      break;
    }
  }
  return out;
}

SymbolSequence shuffle(const SymbolSequence& seq, ShuffleLevel level,
                       std::uint64_t seed) {
  if (seq.symbols.empty()) {
    throw PreconditionError("shuffle: empty sequence");
  }
  Rng rng(seed);
  SymbolSequence out = seq;
  auto find_symbol = [&](const std::string& s) -> int {
    for (std::size_t k = 0; k < seq.alphabet.size(); ++k) {
      if (seq.alphabet[k] == s) return static_cast<int>(k);
    }
    return -1;
  };
  switch (level) {
    case ShuffleLevel::symbols:
      rng.shuffle(out.symbols);
      break;
    case ShuffleLevel::words: {
      const int space = find_symbol(" ");
      if (space < 0) {
        throw PreconditionError("shuffle: alphabet has no space symbol");
      }
      // chunks between spaces are the units; separators are re-inserted
      std::vector<std::vector<std::uint8_t>> chunks;
      std::vector<std::uint8_t> cur;
      for (std::uint8_t s : seq.symbols) {
        if (s == space) {
          if (!cur.empty()) chunks.push_back(std::move(cur));
          cur.clear();
        } else {
          cur.push_back(s);
        }
      }
      if (!cur.empty()) chunks.push_back(std::move(cur));
      rng.shuffle(chunks);
      out.symbols.clear();
      for (std::size_t k = 0; k < chunks.size(); ++k) {
        if (k > 0) out.symbols.push_back(static_cast<std::uint8_t>(space));
        out.symbols.insert(out.symbols.end(), chunks[k].begin(), chunks[k].end());
      }
      break;
    }
    case ShuffleLevel::sentences: {
      const int period = find_symbol(".");
      if (period < 0) {
        throw PreconditionError(
            "shuffle: sentences level requires a '.' symbol (symbols32 scheme)");
      }
      std::vector<std::size_t> bounds;
      for (std::size_t k = 0; k < seq.symbols.size(); ++k) {
        if (seq.symbols[k] == period) bounds.push_back(k + 1);
      }
      if (bounds.empty() || bounds.back() != seq.symbols.size()) {
        bounds.push_back(seq.symbols.size());
      }
      out.symbols = shuffle_blocks(seq.symbols, bounds, rng, nullptr);
      break;
    }
  }
  return out;
}

WordLengthStats word_length_stats(const TokenizedText& text) {
  if (text.tokens.empty()) {
    throw PreconditionError("word_length_stats: empty text");
  }
  std::vector<std::size_t> len_of(text.lexicon.size());
  for (std::size_t i = 0; i < text.lexicon.size(); ++i) {
    len_of[i] = letter_count(text.lexicon[i]);
  }
  std::map<std::size_t, std::size_t> counts;
  for (std::uint32_t id : text.tokens) {
    ++counts[len_of[id]];
  }
  WordLengthStats stats;
  const double total = static_cast<double>(text.tokens.size());
  double mean = 0, m2 = 0, h = 0;
  for (const auto& [len, cnt] : counts) {
    const double p = static_cast<double>(cnt) / total;
    stats.p[len] = p;
    mean += p * static_cast<double>(len);
    h -= xlog2x(p);
  }
  for (const auto& [len, cnt] : counts) {
    const double p = static_cast<double>(cnt) / total;
    const double d = static_cast<double>(len) - mean;
    m2 += p * d * d;
  }
  stats.mean = mean;
  stats.stddev = std::sqrt(m2);
  stats.entropy_bits = h;
  return stats;
}

TokenizedText ngrams(const SymbolSequence& seq, std::size_t l, std::size_t offset) {
  if (l < 1 || l > seq.symbols.size()) {
    throw PreconditionError("ngrams: need 1 <= l <= sequence length");
  }
  if (offset >= l) {
    throw PreconditionError("ngrams: need 0 <= offset < l");
  }
  TokenizedText text;
  text.source_id = seq.source_id;
  Interner interner;
  for (std::size_t start = offset; start + l <= seq.symbols.size(); start += l) {
    std::string form;
    for (std::size_t k = 0; k < l; ++k) {
      form += seq.alphabet[seq.symbols[start + k]];
    }
    text.tokens.push_back(interner.intern(std::move(form)));
  }
  if (text.tokens.empty()) {
    throw EmptyCorpusError();
  }
  text.lexicon = std::move(interner.forms);
  text.sentence_bounds.push_back(text.tokens.size());
  return text;
}

}  // namespace lexstat

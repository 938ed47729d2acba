#include "lexstat/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "lexstat/errors.hpp"

namespace lexstat {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write " + path.string());
  }
  out << contents;
}

std::string content_digest(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string Provenance::csv_header() const {
  std::string out;
  out += std::string("# ") + kToolName + " " + kToolVersion + "\n";
  out += "# cmd=" + command + "\n";
  if (!input_digest.empty()) {
    out += "# input=" + input_digest + "\n";
  }
  if (seed.has_value()) {
    out += "# seed=" + std::to_string(*seed) + "\n";
  }
  return out;
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

void save_tokens(const TokenizedText& text, const std::filesystem::path& base,
                 const Provenance& prov) {
  std::string body;
  body.reserve(text.tokens.size() * 6);
  std::size_t bound_idx = 0;
  for (std::size_t t = 0; t < text.tokens.size(); ++t) {
    body += text.lexicon[text.tokens[t]];
    body += '\n';
    if (bound_idx < text.sentence_bounds.size() &&
        t + 1 == text.sentence_bounds[bound_idx]) {
      ++bound_idx;
      if (t + 1 < text.tokens.size()) body += '\n';
    }
  }
  std::filesystem::path tokens_path = base;
  tokens_path += ".tokens";
  write_file(tokens_path, body);

  std::string header = "{";
  header += "\"T\":" + std::to_string(text.tokens.size());
  header += ",\"V\":" + std::to_string(text.lexicon.size());
  header += ",\"source_id\":\"" + text.source_id + "\"";
  header += ",\"tool\":\"" + std::string(kToolName) + " " + kToolVersion + "\"";
  if (!prov.input_digest.empty()) {
    header += ",\"input\":\"" + prov.input_digest + "\"";
  }
  if (prov.seed.has_value()) {
    header += ",\"seed\":" + std::to_string(*prov.seed);
  }
  header += "}\n";
  std::filesystem::path json_path = base;
  json_path += ".json";
  write_file(json_path, header);
}

TokenizedText load_tokens(const std::filesystem::path& base) {
  std::filesystem::path tokens_path = base;
  tokens_path += ".tokens";
  std::ifstream in(tokens_path);
  if (!in) {
    throw Error("cannot open " + tokens_path.string());
  }
  TokenizedText text;
  text.source_id = base.filename().string();
  std::unordered_map<std::string, std::uint32_t> ids;
  std::string line;
  bool saw_token = false;
  while (std::getline(in, line)) {
    if (line.empty()) {
      if (saw_token && (text.sentence_bounds.empty() ||
                        text.sentence_bounds.back() != text.tokens.size())) {
        text.sentence_bounds.push_back(text.tokens.size());
      }
      continue;
    }
    auto [it, inserted] =
        ids.emplace(line, static_cast<std::uint32_t>(text.lexicon.size()));
    if (inserted) text.lexicon.push_back(line);
    text.tokens.push_back(it->second);
    saw_token = true;
  }
  if (text.tokens.empty()) {
    throw EmptyCorpusError();
  }
  if (text.sentence_bounds.empty() ||
      text.sentence_bounds.back() != text.tokens.size()) {
    text.sentence_bounds.push_back(text.tokens.size());
  }
  return text;
}

GuessTable load_guess_table(const std::filesystem::path& path,
                            std::size_t alphabet_size) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open " + path.string());
  }
  GuessTable table;
  table.alphabet_size = alphabet_size;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    for (char& c : line) {
      if (c == ',') c = ' ';
    }
    std::istringstream row(line);
    std::size_t n = 0, k = 0;
    double q = 0;
    if (!(row >> n >> k >> q)) continue;  // header or malformed line
    if (k < 1 || k > alphabet_size) {
      throw PreconditionError("guess table: k outside 1..alphabet");
    }
    auto& r = table.rows[n];
    if (r.empty()) r.assign(alphabet_size, 0.0);
    r[k - 1] = q;
  }
  table.validate();
  return table;
}

std::vector<std::size_t> load_bounds(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open " + path.string());
  }
  std::vector<std::size_t> bounds;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    bounds.push_back(std::stoull(line));
  }
  if (bounds.empty()) {
    throw PreconditionError("bounds file is empty");
  }
  return bounds;
}

}  // namespace lexstat

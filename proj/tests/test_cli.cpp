#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "lexstat/io.hpp"

namespace {

std::string g_binary;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = g_binary + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) {
    r.output.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("unknown flags are usage errors with exit code 2") {
  CHECK(run_cli("zipf --no-such-flag").exit_code == 2);
  CHECK(run_cli("definitely-not-a-command").exit_code == 2);
}

TEST_CASE("help exits cleanly and lists every subcommand") {
  const RunResult r = run_cli("--help");
  CHECK(r.exit_code == 0);
  for (const char* sub :
       {"tokenize", "zipf", "heaps", "simon", "monkey", "langevin", "leasteffort",
        "walk", "hurst", "dfa", "burst", "keywords", "entropy", "order-info",
        "markov", "scale", "crosstext", "shuffle"}) {
    CHECK(r.output.find(sub) != std::string::npos);
  }
}

TEST_CASE("randomized commands demand an explicit seed") {
  CHECK(run_cli("simon --alpha 0.1 --steps 100").exit_code == 2);
  CHECK(run_cli("monkey --M 26 --p0 0.2 --length 100").exit_code == 2);
}

TEST_CASE("missing input files are analysis errors with exit code 1") {
  CHECK(run_cli("zipf --in /nonexistent/book.txt").exit_code == 1);
}

TEST_CASE("generation is byte-identical across runs with the same seed") {
  const RunResult a = run_cli("simon --alpha 0.05 --steps 20000 --seed 7");
  const RunResult b = run_cli("simon --alpha 0.05 --steps 20000 --seed 7");
  REQUIRE(a.exit_code == 0);
  CHECK(a.output == b.output);
  const RunResult c = run_cli("simon --alpha 0.05 --steps 20000 --seed 8");
  CHECK(a.output != c.output);
}

TEST_CASE("zipf subcommand emits a provenance-stamped fit") {
  const auto book = temp_file("lexstat_cli_book.txt",
                              "the cat sat on the mat. the dog sat on the log. "
                              "a cat and a dog and a mat and a log. "
                              "cats dogs mats logs all around the place.");
  const RunResult r =
      run_cli("zipf --in " + book.string() + " --window 1:8");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("\"exponent\"") != std::string::npos);
  CHECK(r.output.find("\"z\"") != std::string::npos);
  CHECK(r.output.find("fnv1a:") != std::string::npos);
  CHECK(r.output.find(lexstat::kToolVersion) != std::string::npos);
  std::filesystem::remove(book);
}

TEST_CASE("csv artifacts carry comment headers and 12-digit numbers") {
  const auto book = temp_file("lexstat_cli_book2.txt",
                              "alpha beta alpha gamma alpha beta delta. "
                              "alpha beta gamma delta epsilon.");
  const auto csv = std::filesystem::temp_directory_path() / "lexstat_cli_table.csv";
  const RunResult r = run_cli("zipf --in " + book.string() + " --window 1:5 --csv " +
                              csv.string());
  REQUIRE(r.exit_code == 0);
  std::ifstream in(csv);
  std::string first;
  std::getline(in, first);
  CHECK(first.rfind("# lexstat", 0) == 0);
  std::string line;
  bool saw_freq = false;
  while (std::getline(in, line)) {
    if (line.find("0.2") != std::string::npos) saw_freq = true;
  }
  CHECK(saw_freq);
  std::filesystem::remove(book);
  std::filesystem::remove(csv);
}

TEST_CASE("shuffle preserves the token multiset") {
  const auto book = temp_file("lexstat_cli_book3.txt",
                              "one two three four five. six seven eight nine ten.");
  const auto out = std::filesystem::temp_directory_path() / "lexstat_cli_shuffled";
  const RunResult r = run_cli("shuffle --in " + book.string() + " --level words" +
                              " --seed 3 --out " + out.string());
  REQUIRE(r.exit_code == 0);
  const lexstat::TokenizedText text = lexstat::load_tokens(out);
  CHECK(text.tokens.size() == 10);
  CHECK(text.lexicon.size() == 10);
  std::filesystem::remove(book);
  std::filesystem::remove(out.string() + ".tokens");
  std::filesystem::remove(out.string() + ".json");
}

TEST_CASE("markov subcommand reports the closed forms") {
  const RunResult r = run_cli("markov --mu1 0.75 --mu2 0.75");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("\"h_z\": 1.0") != std::string::npos);
  CHECK(r.output.find("\"lambda\"") != std::string::npos);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-lexstat-binary>\n");
    return 1;
  }
  g_binary = argv[argc - 1];
  doctest::Context context;
  context.applyCommandLine(argc - 1, argv);
  return context.run();
}

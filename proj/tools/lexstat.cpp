// lexstat: corpus statistics from the command line.
//
// Every randomized subcommand requires an explicit --seed and all artifacts
// carry a provenance header (tool version, seed, input digest), so re-running
// a command reproduces its outputs byte for byte.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "lexstat/burstiness.hpp"
#include "lexstat/corpus.hpp"
#include "lexstat/errors.hpp"
#include "lexstat/genmodels.hpp"
#include "lexstat/infotheory.hpp"
#include "lexstat/io.hpp"
#include "lexstat/leasteffort.hpp"
#include "lexstat/rng.hpp"
#include "lexstat/semscale.hpp"
#include "lexstat/walks.hpp"
#include "lexstat/zipf.hpp"

namespace {

using json = nlohmann::json;
using namespace lexstat;

std::string g_command_line;

Provenance make_provenance(const std::string& digest,
                           std::optional<std::uint64_t> seed) {
  Provenance p;
  p.command = g_command_line;
  p.input_digest = digest;
  p.seed = seed;
  return p;
}

json provenance_json(const Provenance& p) {
  json j;
  j["tool"] = std::string(kToolName) + " " + kToolVersion;
  j["cmd"] = p.command;
  if (!p.input_digest.empty()) j["input"] = p.input_digest;
  if (p.seed.has_value()) j["seed"] = *p.seed;
  return j;
}

void emit_json(const json& j, const std::string& out_path) {
  const std::string payload = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << payload;
  } else {
    write_file(out_path, payload);
  }
}

void emit_text(const std::string& body, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << body;
  } else {
    write_file(out_path, body);
  }
}

std::pair<double, double> parse_window(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw CLI::ValidationError("window", "expected lo:hi");
  }
  return {std::stod(spec.substr(0, colon)), std::stod(spec.substr(colon + 1))};
}

// grid specs: "log:LO:HI:N" where HI may use T, T/2, T/4, T/8
std::vector<std::size_t> parse_grid(const std::string& spec, std::size_t t) {
  auto resolve = [t](const std::string& token) -> std::size_t {
    if (token == "T") return t;
    if (token == "T/2") return t / 2;
    if (token == "T/4") return t / 4;
    if (token == "T/8") return t / 8;
    return static_cast<std::size_t>(std::stoull(token));
  };
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 4 || parts[0] != "log") {
    throw CLI::ValidationError("grid", "expected log:LO:HI:N");
  }
  const std::size_t lo = resolve(parts[1]);
  const std::size_t hi = resolve(parts[2]);
  const std::size_t n = resolve(parts[3]);
  std::vector<std::size_t> grid = log_grid(lo, hi, std::max<std::size_t>(1, n));
  // thin to ~n points, keeping the ends
  while (grid.size() > n && grid.size() > 2) {
    std::vector<std::size_t> thin;
    for (std::size_t i = 0; i < grid.size(); i += 2) thin.push_back(grid[i]);
    if (thin.back() != grid.back()) thin.push_back(grid.back());
    grid.swap(thin);
  }
  return grid;
}

DiscreteDist parse_dist(const std::string& spec) {
  DiscreteDist dist;
  std::stringstream ss(spec);
  std::string atom;
  while (std::getline(ss, atom, ',')) {
    const auto colon = atom.find(':');
    if (colon == std::string::npos) {
      throw CLI::ValidationError("dist", "expected v:p,v:p,...");
    }
    dist.emplace_back(std::stod(atom.substr(0, colon)),
                      std::stod(atom.substr(colon + 1)));
  }
  return dist;
}

struct LoadedText {
  TokenizedText text;
  std::string digest;
};

LoadedText load_text(const std::string& path) {
  const std::string raw = read_file(path);
  LoadedText lt;
  lt.digest = content_digest(raw);
  lt.text = tokenize_words(raw, std::filesystem::path(path).filename().string());
  return lt;
}

json fit_json(const PowerLawFit& fit) {
  return json{{"exponent", fit.exponent},
              {"intercept", fit.intercept},
              {"window", {fit.window_lo, fit.window_hi}},
              {"rms_residual", fit.rms_residual},
              {"n_points", fit.n_points}};
}

std::size_t thread_count(std::size_t cli_value) {
  if (cli_value > 0) return cli_value;
  if (const char* env = std::getenv("LEXSTAT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

int run(int argc, char** argv) {
  CLI::App app{"corpus statistics: frequency laws, stochastic text models, "
               "long-range correlations, burstiness, entropy"};
  app.require_subcommand(1);

  {
    std::ostringstream cmd;
    for (int i = 0; i < argc; ++i) cmd << (i ? " " : "") << argv[i];
    g_command_line = cmd.str();
  }

  // ---- tokenize ----
  auto* cmd_tok = app.add_subcommand("tokenize", "tokenize a UTF-8 text file");
  std::string tok_in, tok_out, tok_scheme = "words";
  cmd_tok->add_option("--in", tok_in, "input text file")->required();
  cmd_tok->add_option("--out", tok_out, "output base path")->required();
  cmd_tok->add_option("--scheme", tok_scheme, "words | letters27 | symbols32")
      ->check(CLI::IsMember({"words", "letters27", "symbols32"}));
  cmd_tok->callback([&] {
    const std::string raw = read_file(tok_in);
    const Provenance prov = make_provenance(content_digest(raw), std::nullopt);
    if (tok_scheme == "words") {
      save_tokens(tokenize_words(raw, tok_in), tok_out, prov);
    } else {
      const TokenScheme scheme = tok_scheme == "letters27" ? TokenScheme::letters27
                                                           : TokenScheme::symbols32;
      const SymbolSequence seq = tokenize_symbols(raw, scheme, tok_in);
      std::string body;
      for (std::uint8_t s : seq.symbols) body += seq.alphabet[s];
      body += '\n';
      emit_text(body, tok_out + ".symbols");
      json j = provenance_json(prov);
      j["T"] = seq.symbols.size();
      j["A"] = seq.alphabet.size();
      j["source_id"] = seq.source_id;
      emit_json(j, tok_out + ".json");
    }
  });

  // ---- shuffle ----
  auto* cmd_shuf = app.add_subcommand("shuffle", "controlled null-model shuffles");
  std::string shuf_in, shuf_out, shuf_level = "words", shuf_scheme = "words";
  std::uint64_t shuf_seed = 0;
  cmd_shuf->add_option("--in", shuf_in, "input text file")->required();
  cmd_shuf->add_option("--out", shuf_out, "output base path")->required();
  cmd_shuf->add_option("--scheme", shuf_scheme, "words | letters27 | symbols32")
      ->check(CLI::IsMember({"words", "letters27", "symbols32"}));
  cmd_shuf->add_option("--level", shuf_level, "symbols | words | sentences")
      ->check(CLI::IsMember({"symbols", "words", "sentences"}));
  cmd_shuf->add_option("--seed", shuf_seed, "rng seed")->required();
  cmd_shuf->callback([&] {
    const std::string raw = read_file(shuf_in);
    const Provenance prov = make_provenance(content_digest(raw), shuf_seed);
    const auto level = shuf_level == "symbols"   ? ShuffleLevel::symbols
                       : shuf_level == "words"   ? ShuffleLevel::words
                                                 : ShuffleLevel::sentences;
    if (shuf_scheme == "words") {
      const TokenizedText text = tokenize_words(raw, shuf_in);
      save_tokens(shuffle(text, level, shuf_seed), shuf_out, prov);
      return;
    }
    const TokenScheme scheme = shuf_scheme == "letters27" ? TokenScheme::letters27
                                                          : TokenScheme::symbols32;
    const SymbolSequence seq =
        shuffle(tokenize_symbols(raw, scheme, shuf_in), level, shuf_seed);
    std::string body;
    for (std::uint8_t s : seq.symbols) body += seq.alphabet[s];
    body += '\n';
    emit_text(body, shuf_out + ".symbols");
    json j = provenance_json(prov);
    j["T"] = seq.symbols.size();
    j["A"] = seq.alphabet.size();
    emit_json(j, shuf_out + ".json");
  });

  // ---- zipf ----
  auto* cmd_zipf = app.add_subcommand("zipf", "rank-frequency table and fit");
  std::string zipf_in, zipf_out, zipf_csv, zipf_hist, zipf_window = "50:1000";
  cmd_zipf->add_option("--in", zipf_in, "input text file")->required();
  cmd_zipf->add_option("--window", zipf_window, "rank window lo:hi");
  cmd_zipf->add_option("--out", zipf_out, "fit JSON (default stdout)");
  cmd_zipf->add_option("--csv", zipf_csv, "write rank,form,count,frequency CSV");
  cmd_zipf->add_option("--hist-csv", zipf_hist, "write n,N(n) CSV");
  cmd_zipf->callback([&] {
    const LoadedText lt = load_text(zipf_in);
    const Provenance prov = make_provenance(lt.digest, std::nullopt);
    const OccurrenceTable table = occurrence_table(lt.text);
    const auto [lo, hi] = parse_window(zipf_window);
    json j = provenance_json(prov);
    j["T"] = table.total;
    j["V"] = table.entries.size();
    j["fit"] = fit_json(fit_zipf(table, lo, hi));
    j["fit"]["z"] = j["fit"]["exponent"];
    emit_json(j, zipf_out);
    if (!zipf_csv.empty()) {
      std::string body = prov.csv_header() + "rank,form,count,frequency\n";
      for (const auto& e : table.entries) {
        body += std::to_string(e.rank) + "," + e.form + "," +
                std::to_string(e.count) + "," + format_number(e.frequency) + "\n";
      }
      emit_text(body, zipf_csv);
    }
    if (!zipf_hist.empty()) {
      std::string body = prov.csv_header() + "n,count\n";
      for (const auto& [n, c] : table.histogram) {
        body += std::to_string(n) + "," + std::to_string(c) + "\n";
      }
      emit_text(body, zipf_hist);
    }
  });

  // ---- heaps ----
  auto* cmd_heaps = app.add_subcommand("heaps", "vocabulary growth curve and fit");
  std::string heaps_in, heaps_out, heaps_csv, heaps_window;
  cmd_heaps->add_option("--in", heaps_in, "input text file")->required();
  cmd_heaps->add_option("--window", heaps_window, "t window lo:hi (default T/2:T)");
  cmd_heaps->add_option("--out", heaps_out, "fit JSON (default stdout)");
  cmd_heaps->add_option("--csv", heaps_csv, "write t,V(t) CSV");
  cmd_heaps->callback([&] {
    const LoadedText lt = load_text(heaps_in);
    const Provenance prov = make_provenance(lt.digest, std::nullopt);
    const auto curve = heaps_curve(lt.text);
    double lo = 0, hi = 0;
    if (!heaps_window.empty()) std::tie(lo, hi) = parse_window(heaps_window);
    json j = provenance_json(prov);
    j["T"] = curve.size();
    j["V"] = curve.back();
    j["fit"] = fit_json(fit_heaps(curve, lo, hi));
    j["fit"]["nu"] = j["fit"]["exponent"];
    emit_json(j, heaps_out);
    if (!heaps_csv.empty()) {
      std::string body = prov.csv_header() + "t,V\n";
      for (std::size_t t = 0; t < curve.size(); ++t) {
        body += std::to_string(t + 1) + "," + std::to_string(curve[t]) + "\n";
      }
      emit_text(body, heaps_csv);
    }
  });

  // ---- simon ----
  auto* cmd_simon = app.add_subcommand(
      "simon", "reinforcement text generator (constant, decaying, or birth/death)");
  double si_alpha = 0.05, si_alpha0 = 0.0, si_nu = 1.0, si_mu = 0.0;
  std::size_t si_steps = 100000, si_ensemble = 0;
  std::uint64_t si_seed = 0;
  std::string si_out, si_json;
  cmd_simon->add_option("--alpha", si_alpha, "constant new-word rate");
  cmd_simon->add_option("--alpha0", si_alpha0, "decaying-rate prefactor (enables nu)");
  cmd_simon->add_option("--nu", si_nu, "rate decay exponent");
  cmd_simon->add_option("--mu", si_mu, "death probability (population model)");
  cmd_simon->add_option("--steps", si_steps, "generation steps")->required();
  cmd_simon->add_option("--seed", si_seed, "rng seed")->required();
  cmd_simon->add_option("--ensemble", si_ensemble,
                        "run N seeds derived from --seed; emit a JSON array of fits");
  cmd_simon->add_option("--out", si_out, "token output base path");
  cmd_simon->add_option("--json", si_json, "summary JSON (default stdout)");
  cmd_simon->callback([&] {
    GeneratorConfig cfg;
    cfg.alpha = si_alpha;
    cfg.alpha0 = si_alpha0;
    cfg.nu = si_nu;
    cfg.mu = si_mu;
    cfg.steps = si_steps;
    cfg.seed = si_seed;
    const Provenance prov = make_provenance("", si_seed);
    if (si_ensemble > 0 && si_mu == 0) {
      json runs = json::array();
      for (std::size_t k = 0; k < si_ensemble; ++k) {
        GeneratorConfig c = cfg;
        c.seed = derive_seed(si_seed, k);
        const TokenizedText text =
            si_alpha0 > 0 ? simon_extended_generate(c) : simon_generate(c);
        const OccurrenceTable table = occurrence_table(text);
        json run;
        run["seed"] = c.seed;
        run["V"] = text.lexicon_size();
        run["rank_fit"] = fit_json(fit_zipf(table));
        run["histogram_fit"] = fit_json(fit_histogram(table));
        run["heaps_fit"] = fit_json(fit_heaps(heaps_curve(text)));
        runs.push_back(std::move(run));
      }
      json j = provenance_json(prov);
      j["ensemble"] = std::move(runs);
      emit_json(j, si_json);
      return;
    }
    json j = provenance_json(prov);
    if (si_mu > 0) {
      const OccurrenceTable table = simon_death_generate(cfg);
      j["population"] = table.total;
      j["names"] = table.entries.size();
      j["histogram_fit"] = fit_json(fit_histogram(table));
      if (!si_out.empty()) {
        std::string body = prov.csv_header() + "rank,name,count\n";
        for (const auto& e : table.entries) {
          body += std::to_string(e.rank) + "," + e.form + "," +
                  std::to_string(e.count) + "\n";
        }
        emit_text(body, si_out + ".csv");
      }
    } else {
      const TokenizedText text = si_alpha0 > 0 ? simon_extended_generate(cfg)
                                               : simon_generate(cfg);
      const OccurrenceTable table = occurrence_table(text);
      j["T"] = text.size();
      j["V"] = text.lexicon_size();
      j["rank_fit"] = fit_json(fit_zipf(table));
      j["histogram_fit"] = fit_json(fit_histogram(table));
      j["heaps_fit"] = fit_json(fit_heaps(heaps_curve(text)));
      if (!si_out.empty()) save_tokens(text, si_out, prov);
    }
    emit_json(j, si_json);
  });

  // ---- monkey ----
  auto* cmd_monkey = app.add_subcommand("monkey", "random-typing text generator");
  MonkeyConfig mk;
  std::string mk_out, mk_json;
  cmd_monkey->add_option("--M", mk.alphabet, "non-space letters")->required();
  cmd_monkey->add_option("--p0", mk.p0, "space probability")->required();
  cmd_monkey->add_option("--length", mk.length, "characters to emit")->required();
  cmd_monkey->add_option("--seed", mk.seed, "rng seed")->required();
  cmd_monkey->add_option("--out", mk_out, "token output base path");
  cmd_monkey->add_option("--json", mk_json, "summary JSON (default stdout)");
  cmd_monkey->callback([&] {
    const Provenance prov = make_provenance("", mk.seed);
    const TokenizedText text = monkey_generate(mk);
    const OccurrenceTable table = occurrence_table(text);
    json j = provenance_json(prov);
    j["T"] = text.size();
    j["V"] = text.lexicon_size();
    j["predicted_z"] = monkey_predicted_z(mk.alphabet, mk.p0);
    j["rank_fit"] = fit_json(fit_zipf(table));
    if (!mk_out.empty()) save_tokens(text, mk_out, prov);
    emit_json(j, mk_json);
  });

  // ---- langevin ----
  auto* cmd_lang = app.add_subcommand(
      "langevin", "additive-multiplicative growth ensemble");
  std::string la_a, la_b, la_csv, la_json;
  std::size_t la_steps = 200, la_walkers = 10000;
  std::uint64_t la_seed = 0;
  double la_n0 = 0.0;
  cmd_lang->add_option("--a", la_a, "additive dist v:p,v:p,...")->required();
  cmd_lang->add_option("--b", la_b, "multiplicative dist v:p,...")->required();
  cmd_lang->add_option("--steps", la_steps, "iterations per walker");
  cmd_lang->add_option("--walkers", la_walkers, "ensemble size");
  cmd_lang->add_option("--seed", la_seed, "rng seed")->required();
  cmd_lang->add_option("--n0", la_n0, "initial value");
  cmd_lang->add_option("--csv", la_csv, "write final values CSV");
  cmd_lang->add_option("--json", la_json, "summary JSON (default stdout)");
  cmd_lang->callback([&] {
    const DiscreteDist f = parse_dist(la_a);
    const DiscreteDist g = parse_dist(la_b);
    const Provenance prov = make_provenance("", la_seed);
    const LangevinResult r = langevin_simulate(f, g, la_steps, la_walkers, la_seed, la_n0);
    json j = provenance_json(prov);
    j["walkers"] = la_walkers;
    j["diverged"] = r.diverged;
    try {
      j["kesten_gamma"] = kesten_exponent(g);
    } catch (const NoRootError&) {
      j["kesten_gamma"] = nullptr;
    }
    if (!la_csv.empty()) {
      std::string body = prov.csv_header() + "final\n";
      for (double v : r.final_values) body += format_number(v) + "\n";
      emit_text(body, la_csv);
    }
    emit_json(j, la_json);
  });

  // ---- leasteffort ----
  auto* cmd_le = app.add_subcommand(
      "leasteffort", "word-meaning cost optimization sweep over lambda");
  std::size_t le_l = 32, le_k = 32, le_runs = 3, le_iters = 20000, le_threads = 0;
  std::uint64_t le_seed = 0;
  std::string le_grid = "0.1:0.9:17", le_out;
  double le_flip = 0.0;
  cmd_le->add_option("--l", le_l, "words");
  cmd_le->add_option("--k", le_k, "meanings");
  cmd_le->add_option("--lambda-grid", le_grid, "lo:hi:count");
  cmd_le->add_option("--runs", le_runs, "runs per lambda");
  cmd_le->add_option("--iterations", le_iters, "iterations per run");
  cmd_le->add_option("--flip-rate", le_flip, "per-cell flip probability");
  cmd_le->add_option("--seed", le_seed, "rng seed")->required();
  cmd_le->add_option("--threads", le_threads, "worker threads (or LEXSTAT_THREADS)");
  cmd_le->add_option("--out", le_out, "sweep CSV (default stdout)");
  cmd_le->callback([&] {
    std::vector<std::string> parts;
    std::stringstream ss(le_grid);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) {
      throw CLI::ValidationError("lambda-grid", "expected lo:hi:count");
    }
    const double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
    const std::size_t count = std::stoull(parts[2]);
    std::vector<double> grid;
    for (std::size_t i = 0; i < count; ++i) {
      grid.push_back(count == 1 ? lo
                                : lo + (hi - lo) * static_cast<double>(i) /
                                           static_cast<double>(count - 1));
    }
    const Provenance prov = make_provenance("", le_seed);
    const auto sweep = lambda_sweep(le_l, le_k, grid, le_runs, le_iters, le_seed,
                                    thread_count(le_threads));
    std::string body =
        prov.csv_header() + "lambda,mean_I,std_I,mean_L,std_L,stall_iter\n";
    for (const auto& pt : sweep) {
      body += format_number(pt.lambda) + "," + format_number(pt.mean_information) +
              "," + format_number(pt.std_information) + "," +
              format_number(pt.mean_lexicon) + "," + format_number(pt.std_lexicon) +
              "," + format_number(pt.mean_stall_iteration) + "\n";
    }
    emit_text(body, le_out);
  });

  // ---- walk ----
  auto* cmd_walk = app.add_subcommand(
      "walk", "letter-walk variance curve or word-rank walk signal");
  std::string wk_in, wk_mode = "letters", wk_csv, wk_json, wk_grid;
  cmd_walk->add_option("--in", wk_in, "input text file")->required();
  cmd_walk->add_option("--mode", wk_mode, "letters | symbols32 | rank")
      ->check(CLI::IsMember({"letters", "symbols32", "rank"}));
  cmd_walk->add_option("--grid", wk_grid, "scale grid log:LO:HI:N");
  cmd_walk->add_option("--csv", wk_csv, "curve/signal CSV (default stdout)");
  cmd_walk->add_option("--json", wk_json, "fit JSON");
  cmd_walk->callback([&] {
    const std::string raw = read_file(wk_in);
    const Provenance prov = make_provenance(content_digest(raw), std::nullopt);
    if (wk_mode == "rank") {
      const WalkSignal sig = rank_walk(tokenize_words(raw, wk_in));
      std::string body = prov.csv_header() + "t,xi,y\n";
      for (std::size_t t = 0; t < sig.steps.size(); ++t) {
        body += std::to_string(t + 1) + "," + format_number(sig.steps[t]) + "," +
                format_number(sig.positions[t + 1]) + "\n";
      }
      emit_text(body, wk_csv);
      return;
    }
    const TokenScheme scheme =
        wk_mode == "letters" ? TokenScheme::letters27 : TokenScheme::symbols32;
    const SymbolSequence seq = tokenize_symbols(raw, scheme, wk_in);
    const std::vector<std::size_t> grid =
        wk_grid.empty() ? default_scale_grid(seq.symbols.size())
                        : parse_grid(wk_grid, seq.symbols.size());
    const VarianceCurve curve = letter_walk_variance(seq, grid);
    std::string body = prov.csv_header() + "t,variance\n";
    for (std::size_t i = 0; i < curve.t.size(); ++i) {
      body += format_number(curve.t[i]) + "," + format_number(curve.variance[i]) + "\n";
    }
    emit_text(body, wk_csv);
    if (!wk_json.empty()) {
      json j = provenance_json(prov);
      j["fit"] = fit_json(fit_variance_curve(curve));
      j["fit"]["alpha"] = j["fit"]["exponent"];
      emit_json(j, wk_json);
    }
  });

  // ---- hurst ----
  auto* cmd_hurst = app.add_subcommand("hurst", "rescaled-range exponent of the rank walk");
  std::string hu_in, hu_signal, hu_csv, hu_json, hu_grid, hu_filter;
  cmd_hurst->add_option("--in", hu_in, "input text file (rank walk)");
  cmd_hurst->add_option("--signal-csv", hu_signal, "numeric step series, one per line");
  cmd_hurst->add_option("--tau", hu_grid, "tau grid log:LO:HI:N");
  cmd_hurst->add_option("--filter", hu_filter, "keep ranks strictly inside lo:hi");
  cmd_hurst->add_option("--csv", hu_csv, "tau, mean R/sigma CSV");
  cmd_hurst->add_option("--json", hu_json, "fit JSON (default stdout)");
  cmd_hurst->callback([&] {
    WalkSignal sig;
    Provenance prov;
    if (!hu_in.empty()) {
      const std::string raw = read_file(hu_in);
      prov = make_provenance(content_digest(raw), std::nullopt);
      std::uint32_t lo = 0, hi = 0;
      if (!hu_filter.empty()) {
        const auto [flo, fhi] = parse_window(hu_filter);
        lo = static_cast<std::uint32_t>(flo);
        hi = static_cast<std::uint32_t>(fhi);
      }
      sig = rank_walk(tokenize_words(raw, hu_in), lo, hi);
    } else if (!hu_signal.empty()) {
      const std::string raw = read_file(hu_signal);
      prov = make_provenance(content_digest(raw), std::nullopt);
      std::vector<double> steps;
      std::stringstream ss(raw);
      std::string line;
      while (std::getline(ss, line)) {
        if (!line.empty() && line[0] != '#') steps.push_back(std::stod(line));
      }
      sig = WalkSignal::from_steps(std::move(steps), hu_signal);
    } else {
      throw CLI::ValidationError("hurst", "need --in or --signal-csv");
    }
    prov.command = g_command_line;
    const std::vector<std::size_t> grid =
        hu_grid.empty() ? default_scale_grid(sig.steps.size())
                        : parse_grid(hu_grid, sig.steps.size());
    const RescaledRangeCurve curve = hurst_rs_curve(sig, grid);
    const PowerLawFit fit =
        fit_loglog(curve.tau, curve.mean_ratio, curve.tau.front(), curve.tau.back());
    if (!hu_csv.empty()) {
      std::string body = prov.csv_header() + "tau,mean_R_over_sigma\n";
      for (std::size_t i = 0; i < curve.tau.size(); ++i) {
        body += format_number(curve.tau[i]) + "," +
                format_number(curve.mean_ratio[i]) + "\n";
      }
      emit_text(body, hu_csv);
    }
    json j = provenance_json(prov);
    j["fit"] = fit_json(fit);
    j["fit"]["H"] = j["fit"]["exponent"];
    emit_json(j, hu_json);
  });

  // ---- dfa ----
  auto* cmd_dfa = app.add_subcommand("dfa", "detrended fluctuation analysis");
  std::string df_in, df_signal, df_csv, df_json, df_grid;
  cmd_dfa->add_option("--in", df_in, "input text file (rank-walk steps)");
  cmd_dfa->add_option("--signal-csv", df_signal, "numeric series, one per line");
  cmd_dfa->add_option("--box", df_grid, "box grid log:LO:HI:N");
  cmd_dfa->add_option("--csv", df_csv, "s, F(s) CSV");
  cmd_dfa->add_option("--json", df_json, "fit JSON (default stdout)");
  cmd_dfa->callback([&] {
    std::vector<double> series;
    Provenance prov;
    if (!df_in.empty()) {
      const std::string raw = read_file(df_in);
      prov = make_provenance(content_digest(raw), std::nullopt);
      series = rank_walk(tokenize_words(raw, df_in)).steps;
    } else if (!df_signal.empty()) {
      const std::string raw = read_file(df_signal);
      prov = make_provenance(content_digest(raw), std::nullopt);
      std::stringstream ss(raw);
      std::string line;
      while (std::getline(ss, line)) {
        if (!line.empty() && line[0] != '#') series.push_back(std::stod(line));
      }
    } else {
      throw CLI::ValidationError("dfa", "need --in or --signal-csv");
    }
    prov.command = g_command_line;
    const std::vector<std::size_t> grid =
        df_grid.empty() ? default_scale_grid(series.size())
                        : parse_grid(df_grid, series.size());
    const FluctuationCurve curve = dfa_curve(series, grid);
    const PowerLawFit fit =
        fit_loglog(curve.s, curve.fluctuation, curve.s.front(), curve.s.back());
    if (!df_csv.empty()) {
      std::string body = prov.csv_header() + "s,F\n";
      for (std::size_t i = 0; i < curve.s.size(); ++i) {
        body += format_number(curve.s[i]) + "," +
                format_number(curve.fluctuation[i]) + "\n";
      }
      emit_text(body, df_csv);
    }
    json j = provenance_json(prov);
    j["fit"] = fit_json(fit);
    j["fit"]["gamma_prime"] = j["fit"]["exponent"];
    emit_json(j, df_json);
  });

  // ---- burst ----
  auto* cmd_burst = app.add_subcommand("burst", "inter-occurrence statistics of one word");
  std::string bu_in, bu_word, bu_csv, bu_json;
  bool bu_bounds = false;
  cmd_burst->add_option("--in", bu_in, "input text file")->required();
  cmd_burst->add_option("--word", bu_word, "surface form")->required();
  cmd_burst->add_flag("--boundaries", bu_bounds, "include start/end gaps");
  cmd_burst->add_option("--csv", bu_csv, "u grid CDF CSV");
  cmd_burst->add_option("--json", bu_json, "summary JSON (default stdout)");
  cmd_burst->callback([&] {
    const LoadedText lt = load_text(bu_in);
    const Provenance prov = make_provenance(lt.digest, std::nullopt);
    std::uint32_t id = UINT32_MAX;
    for (std::uint32_t i = 0; i < lt.text.lexicon.size(); ++i) {
      if (lt.text.lexicon[i] == bu_word) {
        id = i;
        break;
      }
    }
    if (id == UINT32_MAX) {
      throw Error("word not found: " + bu_word);
    }
    const OccurrenceDistances d = occurrence_distances(lt.text, id, bu_bounds);
    json j = provenance_json(prov);
    j["word"] = bu_word;
    j["n"] = d.x.size() + (bu_bounds ? std::size_t{0} : std::size_t{1});
    j["sigma"] = sigma_of_rescaled(d.u);
    emit_json(j, bu_json);
    if (!bu_csv.empty()) {
      std::vector<double> grid;
      for (double u = 0.05; u <= 8.0; u += 0.05) grid.push_back(u);
      const DistanceCdf cdf = distance_cdf(lt.text, id, grid);
      std::string body = prov.csv_header() + "u,empirical,poisson\n";
      for (std::size_t i = 0; i < grid.size(); ++i) {
        body += format_number(cdf.grid[i]) + "," + format_number(cdf.empirical[i]) +
                "," + format_number(cdf.poisson[i]) + "\n";
      }
      emit_text(body, bu_csv);
    }
  });

  // ---- keywords ----
  auto* cmd_kw = app.add_subcommand("keywords", "burstiness keyword ranking");
  std::string kw_in, kw_out, kw_index = "sigma", kw_chapters;
  std::size_t kw_parts = 16;
  std::uint64_t kw_min = 10;
  cmd_kw->add_option("--in", kw_in, "input text file")->required();
  cmd_kw->add_option("--parts", kw_parts, "equal partition count");
  cmd_kw->add_option("--chapters", kw_chapters, "file of end positions");
  cmd_kw->add_option("--min-count", kw_min, "minimum occurrences");
  cmd_kw->add_option("--index", kw_index, "sigma | E")
      ->check(CLI::IsMember({"sigma", "E"}));
  cmd_kw->add_option("--out", kw_out, "report CSV (default stdout)");
  cmd_kw->callback([&] {
    const LoadedText lt = load_text(kw_in);
    const Provenance prov = make_provenance(lt.digest, std::nullopt);
    const PartitionProfile profile =
        kw_chapters.empty() ? partition(lt.text, kw_parts)
                            : partition_from_bounds(lt.text, load_bounds(kw_chapters));
    const auto records =
        rank_keywords(lt.text, profile, kw_min,
                      kw_index == "sigma" ? KeywordIndex::sigma : KeywordIndex::e);
    std::string body = prov.csv_header() + "rank,word,n,sigma,E,h\n";
    std::size_t rank = 1;
    for (const auto& r : records) {
      body += std::to_string(rank++) + "," + r.word + "," + std::to_string(r.count) +
              "," + format_number(r.sigma) + "," + format_number(r.e) + "," +
              format_number(r.h) + "\n";
    }
    emit_text(body, kw_out);
  });

  // ---- entropy ----
  auto* cmd_ent = app.add_subcommand("entropy", "entropy estimates of a text");
  std::string en_in, en_json, en_scheme = "words", en_guess;
  std::size_t en_blocks = 0;
  cmd_ent->add_option("--in", en_in, "input text file");
  cmd_ent->add_option("--scheme", en_scheme, "words | letters27")
      ->check(CLI::IsMember({"words", "letters27"}));
  cmd_ent->add_option("--blocks", en_blocks, "also compute block entropies to n");
  cmd_ent->add_option("--guess-table", en_guess,
                      "CSV of guess fractions (n,k,q): emit F_n bounds instead");
  cmd_ent->add_option("--json", en_json, "output JSON (default stdout)");
  cmd_ent->callback([&] {
    if (!en_guess.empty()) {
      const GuessTable gt = load_guess_table(en_guess);
      const Provenance gp = make_provenance(content_digest(read_file(en_guess)),
                                            std::nullopt);
      json j = provenance_json(gp);
      json bounds = json::array();
      for (const auto& [n, row] : gt.rows) {
        const auto [lo, hi] = shannon_bounds(gt, n);
        bounds.push_back({{"n", n}, {"lower", lo}, {"upper", hi}});
      }
      j["f_n_bounds"] = std::move(bounds);
      emit_json(j, en_json);
      return;
    }
    if (en_in.empty()) {
      throw CLI::ValidationError("entropy", "need --in or --guess-table");
    }
    const std::string raw = read_file(en_in);
    const Provenance prov = make_provenance(content_digest(raw), std::nullopt);
    json j = provenance_json(prov);
    if (en_scheme == "words") {
      const TokenizedText text = tokenize_words(raw, en_in);
      const EntropyReport rep = word_order_information(text);
      j["h"] = rep.h;
      j["h_z_exact"] = rep.h_z_exact;
      j["h_z_stirling"] = rep.h_z_stirling;
      j["h0"] = rep.h0;
      j["redundancy"] = rep.redundancy_value;
      j["estimator"] = rep.estimator;
      if (en_blocks > 0) {
        const BlockEntropies be = block_entropies(text.tokens, text.lexicon_size(),
                                                  en_blocks);
        j["H_n"] = be.h;
        j["F_n"] = be.f;
      }
    } else {
      const SymbolSequence seq = tokenize_symbols(raw, TokenScheme::letters27, en_in);
      const LzEstimate lz = lz_entropy_estimate(seq);
      j["h"] = lz.h;
      j["h_plain"] = lz.h_plain;
      const Redundancy r = redundancy(std::max(0.0, lz.h), seq.alphabet.size());
      j["redundancy"] = r.value;
      if (en_blocks > 0) {
        const BlockEntropies be = block_entropies(seq, en_blocks);
        j["H_n"] = be.h;
        j["F_n"] = be.f;
      }
    }
    emit_json(j, en_json);
  });

  // ---- order-info ----
  auto* cmd_oi = app.add_subcommand("order-info", "word-ordering information D");
  std::string oi_in, oi_json;
  cmd_oi->add_option("--in", oi_in, "input text file")->required();
  cmd_oi->add_option("--json", oi_json, "output JSON (default stdout)");
  cmd_oi->callback([&] {
    const LoadedText lt = load_text(oi_in);
    const Provenance prov = make_provenance(lt.digest, std::nullopt);
    const EntropyReport rep = word_order_information(lt.text);
    json j = provenance_json(prov);
    j["h"] = rep.h;
    j["h_z_exact"] = rep.h_z_exact;
    j["h_z_stirling"] = rep.h_z_stirling;
    j["h0"] = rep.h0;
    j["D_stirling"] = rep.d_stirling;
    j["D_exact"] = rep.d_exact;
    j["redundancy"] = rep.redundancy_value;
    j["estimator"] = rep.estimator;
    emit_json(j, oi_json);
  });

  // ---- markov ----
  auto* cmd_mk = app.add_subcommand("markov", "two-word Markov model language");
  double mv_mu1 = 0.75, mv_mu2 = 0.75;
  std::size_t mv_length = 0;
  std::uint64_t mv_seed = 0;
  std::string mv_out, mv_json;
  bool mv_seed_set = false;
  cmd_mk->add_option("--mu1", mv_mu1, "self-transition of word 1")->required();
  cmd_mk->add_option("--mu2", mv_mu2, "self-transition of word 2")->required();
  cmd_mk->add_option("--length", mv_length, "generate a sequence of this length");
  cmd_mk->add_option("--seed", mv_seed, "rng seed (required with --length)")
      ->each([&](const std::string&) { mv_seed_set = true; });
  cmd_mk->add_option("--out", mv_out, "token output base path");
  cmd_mk->add_option("--json", mv_json, "summary JSON (default stdout)");
  cmd_mk->callback([&] {
    const MarkovLanguage ml = markov_language(mv_mu1, mv_mu2);
    json j = provenance_json(make_provenance(
        "", mv_length > 0 ? std::optional<std::uint64_t>(mv_seed) : std::nullopt));
    j["p1"] = ml.p1;
    j["p2"] = ml.p2;
    j["h_z"] = ml.h_z;
    j["entropy_rate"] = ml.entropy_rate;
    if (ml.lambda.has_value()) {
      j["lambda"] = *ml.lambda;
    } else {
      j["lambda"] = nullptr;
    }
    if (mv_length > 0) {
      if (!mv_seed_set) {
        throw CLI::ValidationError("markov", "--length requires --seed");
      }
      const auto seq = markov_generate(ml, mv_length, mv_seed);
      TokenizedText text;
      text.tokens = seq;
      text.lexicon = {"w0", "w1"};
      text.sentence_bounds.push_back(seq.size());
      text.source_id = "markov";
      const EntropyReport rep = word_order_information(text);
      j["estimated_h"] = rep.h;
      j["estimated_D"] = rep.d_stirling;
      if (!mv_out.empty()) {
        save_tokens(text, mv_out, make_provenance("", mv_seed));
      }
    }
    emit_json(j, mv_json);
  });

  // ---- scale ----
  auto* cmd_scale = app.add_subcommand("scale", "semantic-scale sweep d(s)");
  std::string sc_in, sc_csv, sc_json, sc_grid, sc_contrib, sc_manifest;
  std::size_t sc_top = 20;
  cmd_scale->add_option("--in", sc_in, "input text file");
  cmd_scale->add_option("--manifest", sc_manifest,
                        "path<TAB>label rows: per-text s_max/d_max comparison CSV");
  cmd_scale->add_option("--grid", sc_grid, "scale grid log:LO:HI:N");
  cmd_scale->add_option("--csv", sc_csv, "s,M,d CSV");
  cmd_scale->add_option("--json", sc_json, "s_max JSON (default stdout)");
  cmd_scale->add_option("--contrib-csv", sc_contrib, "top contributor CSV at s_max");
  cmd_scale->add_option("--top", sc_top, "contributors to list");
  cmd_scale->callback([&] {
    if (!sc_manifest.empty()) {
      const std::string manifest = read_file(sc_manifest);
      const Provenance prov = make_provenance(content_digest(manifest), std::nullopt);
      std::string body = prov.csv_header() + "path,label,T,s_max,d_max\n";
      std::stringstream ss(manifest);
      std::string line;
      while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        const std::string path = line.substr(0, tab);
        const std::string label =
            tab == std::string::npos ? "" : line.substr(tab + 1);
        const LoadedText doc = load_text(path);
        const ScaleSweep sweep = scale_sweep(doc.text);
        body += path + "," + label + "," + std::to_string(doc.text.size()) + "," +
                format_number(sweep.s_max) + "," + format_number(sweep.d_max) + "\n";
      }
      emit_text(body, sc_csv.empty() ? sc_json : sc_csv);
      return;
    }
    if (sc_in.empty()) {
      throw CLI::ValidationError("scale", "need --in or --manifest");
    }
    const LoadedText lt = load_text(sc_in);
    const Provenance prov = make_provenance(lt.digest, std::nullopt);
    ScaleSweep sweep;
    if (sc_grid.empty()) {
      sweep = scale_sweep(lt.text);
    } else {
      std::vector<std::size_t> grid = parse_grid(sc_grid, lt.text.size());
      grid.insert(grid.begin(), 1);
      grid.push_back(lt.text.size());
      std::sort(grid.begin(), grid.end());
      grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
      sweep = scale_sweep(lt.text, grid);
    }
    if (!sc_csv.empty()) {
      std::string body = prov.csv_header() + "s,M,d_bits_per_word\n";
      for (const auto& pt : sweep.points) {
        body += std::to_string(pt.s) + "," + std::to_string(pt.parts) + "," +
                format_number(pt.d) + "\n";
      }
      emit_text(body, sc_csv);
    }
    json j = provenance_json(prov);
    j["T"] = lt.text.size();
    j["s_max"] = sweep.s_max;
    j["d_max"] = sweep.d_max;
    j["raw_argmax_s"] = sweep.raw_argmax_s;
    emit_json(j, sc_json);
    if (!sc_contrib.empty()) {
      const auto top = top_contributors(lt.text, sweep.raw_argmax_s, sc_top);
      std::string body = prov.csv_header() + "word,n,h,h_R_expected,f_d\n";
      for (const auto& c : top) {
        body += c.word + "," + std::to_string(c.count) + "," + format_number(c.h) +
                "," + format_number(c.h_random) + "," + format_number(c.f_d) + "\n";
      }
      emit_text(body, sc_contrib);
    }
  });

  // ---- crosstext ----
  auto* cmd_ct = app.add_subcommand("crosstext", "word heterogeneity across documents");
  std::string ct_manifest, ct_out;
  cmd_ct->add_option("--manifest", ct_manifest, "file listing one text path per line")
      ->required();
  cmd_ct->add_option("--out", ct_out, "report CSV (default stdout)");
  cmd_ct->callback([&] {
    const std::string manifest = read_file(ct_manifest);
    std::vector<TokenizedText> docs;
    std::string digest_input;
    std::stringstream ss(manifest);
    std::string line;
    while (std::getline(ss, line)) {
      if (line.empty() || line[0] == '#') continue;
      // manifest rows may carry a label after a tab; only the path matters here
      const std::string path = line.substr(0, line.find('\t'));
      const std::string raw = read_file(path);
      digest_input += content_digest(raw);
      docs.push_back(tokenize_words(raw, path));
    }
    const Provenance prov = make_provenance(content_digest(digest_input), std::nullopt);
    const CrossTextReport report = cross_text_heterogeneity(docs);
    std::string body = prov.csv_header();
    body += "# documents=" + std::to_string(report.documents) +
            " homogeneous_level=" + format_number(report.homogeneous_level) + "\n";
    body += "word,n,h,heterogeneity\n";
    for (const auto& r : report.records) {
      body += r.word + "," + std::to_string(r.count) + "," + format_number(r.h) +
              "," + format_number(r.heterogeneity) + "\n";
    }
    emit_text(body, ct_out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    std::cerr << "run with --help for usage\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const lexstat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sgnash/errors.hpp"
#include "sgnash/gamefile.hpp"
#include "sgnash/generator.hpp"
#include "sgnash/report.hpp"

namespace {

// Accepts "1/3" or a decimal; 1/epsilon must come out integral.
double parse_epsilon(const std::string& text) {
  double value = 0.0;
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      const double num = std::stod(text.substr(0, slash));
      const double den = std::stod(text.substr(slash + 1));
      value = num / den;
    } else {
      value = std::stod(text);
    }
  } catch (const std::exception&) {
    throw sgnash::ParseError("cannot parse epsilon '" + text + "'", 0);
  }
  if (value <= 0.0 || value > 1.0)
    throw sgnash::ParseError("epsilon must lie in (0, 1]", 0);
  const double inv = 1.0 / value;
  if (std::fabs(inv - std::llround(inv)) > 1e-9)
    throw sgnash::ParseError("1/epsilon must be an integer", 0);
  return value;
}

sgnash::SearchMode parse_mode(const std::string& text) {
  if (text == "plain") return sgnash::SearchMode::PlainMultiStart;
  if (text == "ball") return sgnash::SearchMode::BallConstrained;
  throw sgnash::ParseError("mode must be 'plain' or 'ball'", 0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"approximate Nash equilibria through spectral multi-start descent"};
  app.require_subcommand(1);

  std::string path, epsilon_text = "1/2", mode_text = "plain", kind = "winlose", gen_kind;
  std::size_t cap = 100000, n = 8, lmm_k = 2;
  std::uint64_t seed = 0;
  double p = 0.5;
  bool timings = false;

  auto* solve = app.add_subcommand("solve", "solve a game file and print a report");
  solve->add_option("path", path, "game file")->required();
  solve->add_option("--epsilon", epsilon_text, "target accuracy, e.g. 1/2 or 0.25");
  solve->add_option("--mode", mode_text, "plain or ball");
  solve->add_option("--cap", cap, "region enumeration cap");
  solve->add_option("--seed", seed, "seed for certificate sampling");
  solve->add_flag("--timings", timings, "include wall-clock timings in the report");

  auto* spectrum = app.add_subcommand("spectrum", "spectral analysis of a game file");
  spectrum->add_option("path", path, "game file")->required();
  spectrum->add_flag("--timings", timings, "include wall-clock timings in the report");

  auto* gen = app.add_subcommand("gen", "generate an instance and print it");
  gen->add_option("--kind", kind, "winlose, bipartite-winlose or bimatrix");
  gen->add_option("--n", n, "number of strategies");
  gen->add_option("--p", p, "edge probability for win-lose kinds");
  gen->add_option("--seed", seed, "generator seed");

  auto* compare = app.add_subcommand("compare", "grid-spectral vs support-enumeration baseline");
  compare->add_option("path", path, "game file");
  compare->add_option("--gen", gen_kind, "generate instead: winlose, bipartite-winlose, bimatrix");
  compare->add_option("--n", n, "generated size");
  compare->add_option("--p", p, "generated edge probability");
  compare->add_option("--seed", seed, "seed");
  compare->add_option("--epsilon", epsilon_text, "target accuracy");
  compare->add_option("--k", lmm_k, "baseline support size");
  compare->add_option("--cap", cap, "enumeration cap");
  compare->add_flag("--timings", timings, "include wall-clock timings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) {
      sgnash::GameFile file;
      if (kind == "winlose" || kind == "bipartite-winlose") {
        file.kind = sgnash::GameFile::Kind::Symmetric;
        file.symmetric = sgnash::generate_winlose(n, p, seed, kind == "bipartite-winlose");
      } else if (kind == "bimatrix") {
        file.kind = sgnash::GameFile::Kind::Bimatrix;
        file.bimatrix = sgnash::generate_bimatrix(n, n, seed);
      } else {
        std::cerr << "unknown kind '" << kind << "'\n";
        return 2;
      }
      std::cout << sgnash::serialize_game(file);
      return 0;
    }

    sgnash::ReportOptions opts;
    opts.include_timings = timings;
    opts.epsilon = parse_epsilon(epsilon_text);
    opts.cap = cap;
    opts.mode = parse_mode(mode_text);
    opts.seed = seed;

    if (solve->parsed()) {
      const sgnash::GameFile file = sgnash::load_game(path);
      const sgnash::ReportOutcome report = sgnash::solve_report(file, opts);
      std::cout << report.text;
      return report.certificates_ok ? 0 : 1;
    }
    if (spectrum->parsed()) {
      const sgnash::GameFile file = sgnash::load_game(path);
      const sgnash::ReportOutcome report = sgnash::spectrum_report(file, opts);
      std::cout << report.text;
      return report.certificates_ok ? 0 : 1;
    }
    if (compare->parsed()) {
      sgnash::GameFile file;
      if (!gen_kind.empty()) {
        if (gen_kind == "bimatrix") {
          file.kind = sgnash::GameFile::Kind::Bimatrix;
          file.bimatrix = sgnash::generate_bimatrix(n, n, seed);
        } else {
          file.kind = sgnash::GameFile::Kind::Symmetric;
          file.symmetric = sgnash::generate_winlose(n, p, seed, gen_kind == "bipartite-winlose");
        }
      } else if (!path.empty()) {
        file = sgnash::load_game(path);
      } else {
        std::cerr << "compare needs a path or --gen\n";
        return 2;
      }
      sgnash::CompareOptions copts;
      static_cast<sgnash::ReportOptions&>(copts) = opts;
      copts.lmm_k = lmm_k;
      const sgnash::ReportOutcome report = sgnash::compare_report(file, copts);
      std::cout << report.text;
      return report.certificates_ok ? 0 : 1;
    }
  } catch (const sgnash::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const sgnash::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const sgnash::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

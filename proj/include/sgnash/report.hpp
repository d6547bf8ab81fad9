#pragma once

#include <cstdint>
#include <string>

#include "sgnash/core.hpp"
#include "sgnash/gamefile.hpp"
#include "sgnash/oracle.hpp"
#include "sgnash/search.hpp"

namespace sgnash {

struct ReportOptions {
  bool include_timings = false;  // off by default so identical runs match byte for byte
  double epsilon = 0.5;
  std::size_t cap = 100000;
  SearchMode mode = SearchMode::PlainMultiStart;
  std::uint64_t seed = 0;
};

struct ReportOutcome {
  std::string text;            // JSON document
  bool certificates_ok = true;
};

// One solve, one report. Certificates are re-verified from the strategies
// and the input matrices, never copied out of the solver.
ReportOutcome solve_report(const GameFile& game, const ReportOptions& opts);

ReportOutcome spectrum_report(const GameFile& game, const ReportOptions& opts);

struct CompareOptions : ReportOptions {
  std::size_t lmm_k = 2;
};

ReportOutcome compare_report(const GameFile& game, const CompareOptions& opts);

}  // namespace sgnash

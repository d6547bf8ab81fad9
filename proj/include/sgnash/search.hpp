#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgnash/core.hpp"
#include "sgnash/descent.hpp"
#include "sgnash/graph.hpp"
#include "sgnash/spectral.hpp"

namespace sgnash {

enum class SearchMode { PlainMultiStart, BallConstrained };

struct SearchPlan {
  double epsilon = 0.5;
  std::size_t support_size = 2;        // 1/epsilon, clamped to n
  double region_count_bound = 0.0;     // n^(1/epsilon)
  std::size_t cap = 100000;
  SearchMode mode = SearchMode::PlainMultiStart;
  std::uint64_t seed = 0;
};

// Validates that 1/epsilon is an integer and precomputes the plan fields.
SearchPlan make_plan(double epsilon, std::size_t n, std::size_t cap = 100000,
                     SearchMode mode = SearchMode::PlainMultiStart, std::uint64_t seed = 0);

// All subsets of {0..n-1} of size 1..k, ordered by size then
// lexicographically, truncated at cap.
struct SupportEnumeration {
  std::vector<std::vector<std::size_t>> supports;
  bool truncated = false;
};
SupportEnumeration enumerate_supports(std::size_t n, std::size_t k, std::size_t cap);

// Canonical start point of a region: uniform over the support.
ProbVector region_start(const std::vector<std::size_t>& support, std::size_t n);

struct RegionRecord {
  std::vector<std::size_t> support;
  bool failed = false;
  std::string error;
  StationaryResult result;
};

struct SearchOutcome {
  StationaryResult best;   // minimum f(x*) among collected results
  std::size_t best_index = 0;
  std::vector<RegionRecord> regions;
  double guarantee = 0.0;  // epsilon * xi
  double wall_seconds = 0.0;
  std::size_t regions_explored = 0;
  bool truncated = false;
};

// Runs the descent from every region start. Plain mode descends over the
// whole simplex; ball mode constrains each run to the spectral ball of
// squared radius epsilon * xi around its start.
SearchOutcome multi_start_search(const SymmetricGame& g, const Spectrum& s, const SearchPlan& plan,
                                 const DescentOptions& descent = {});

struct PlannerReport {
  double epsilon = 0.0;
  double spectral_exponent = 0.0;   // xi / epsilon
  double sqrt_m_exponent = 0.0;     // sqrt(m) / epsilon
  double baseline_exponent = 0.0;   // 12 ln n / epsilon^2
  double crossover_n = 0.0;         // solves 12 ln n / sqrt(n) = epsilon
};

PlannerReport planner(std::size_t n, const Spectrum& s, double epsilon);
PlannerReport planner_values(std::size_t n, double xi, std::size_t positive_count, double epsilon);

struct SolveOptions {
  std::size_t cap = 100000;
  SearchMode mode = SearchMode::PlainMultiStart;
  std::uint64_t seed = 0;
  std::size_t certificate_samples = 50;
  DescentOptions descent;
};

struct BimatrixSolution {
  ProbVector row_strategy;  // over original rows, removed ones at zero
  ProbVector col_strategy;
  double f_row = 0.0;
  double f_col = 0.0;

  ReductionAnalysis reduction;
  double xi = 0.0;
  std::size_t positive_count = 0;
  Vec eigenvalues;
  double f_sym_best = 0.0;       // f at the selected symmetric point
  double f_sym_rebalanced = 0.0; // f at the recombined point x1
  double transfer_bound = 0.0;   // 2 (1/c1 + 1/c2) f(x1)
  std::optional<CertificateReport> certificate;
  std::optional<SearchOutcome> search;
  std::string trivial_reason;    // set when a degenerate path produced the answer
};

// Full pipeline: normalize, strip dominated strategies, handle the trivial
// zero cases, symmetrize, decompose, run the spectral multi-start descent,
// and split the result back into per-player strategies.
BimatrixSolution solve_bimatrix(const BimatrixGame& g, double epsilon,
                                const SolveOptions& opts = {});

struct SymmetricSolution {
  ProbVector x;  // lifted to the full game when decomposition kicked in
  ProbVector w;
  double f_x = 0.0;
  double f_w = 0.0;
  Vec eigenvalues;
  std::size_t positive_count = 0;
  double xi = 0.0;
  std::optional<CertificateReport> certificate;
  SearchOutcome search;
  std::vector<std::size_t> component_nodes;
};

// Decomposes, runs the multi-start descent on the first component and lifts
// the result by zero padding. Entries of A must already be in [0, 1].
SymmetricSolution solve_symmetric(const SymmetricGame& g, double epsilon,
                                  const SolveOptions& opts = {});

}  // namespace sgnash

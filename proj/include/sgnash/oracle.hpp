#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sgnash/core.hpp"
#include "sgnash/prob_vector.hpp"

namespace sgnash {

struct OracleResult {
  std::vector<ProbVector> equilibria;
  std::string method;
  bool exhaustive = false;
};

// Exhaustive support enumeration for exact symmetric equilibria of tiny
// games: on each support the equal-payoff system is solved directly and
// solutions are kept only when the regret vanishes. Ground truth for the
// search pipeline.
OracleResult exact_symmetric_ne(const SymmetricGame& g, double tol = 1e-8);

struct LmmResult {
  ProbVector row_strategy;
  ProbVector col_strategy;
  double f_row = 0.0;
  double f_col = 0.0;
  std::size_t enumerated = 0;
  bool truncated = false;
};

// Baseline: enumerate k-uniform strategies (uniform over multisets of size
// k) for both players and keep the pair minimizing the larger regret.
LmmResult lmm_support_search(const BimatrixGame& g, std::size_t k, std::size_t cap = 2000000);

struct EpsilonCheck {
  bool ok = false;
  double f_row = 0.0;
  double f_col = 0.0;
};

EpsilonCheck verify_epsilon_ne(const BimatrixGame& g, const ProbVector& x_row,
                               const ProbVector& x_col, double epsilon);

}  // namespace sgnash

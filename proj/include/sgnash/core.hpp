#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sgnash/matrix.hpp"
#include "sgnash/prob_vector.hpp"

namespace sgnash {

// Two-player game in normal form, payoffs normalized to [0, 1].
// R is the row player's payoff matrix, C the column player's; both l1 x l2.
struct BimatrixGame {
  Matrix R;
  Matrix C;

  std::size_t num_rows() const { return R.rows(); }
  std::size_t num_cols() const { return R.cols(); }
};

// Single-matrix symmetric form. The flags record what validation observed,
// they are never assumed.
struct SymmetricGame {
  Matrix A;
  bool zero_diagonal = false;
  bool no_zero_column = false;
  bool no_dominated_row = false;

  std::size_t n() const { return A.rows(); }
};

SymmetricGame make_symmetric_game(Matrix a);

struct TrivialEquilibrium {
  ProbVector row_strategy;
  ProbVector col_strategy;
  std::string reason;
};

struct ReductionAnalysis {
  double c1 = 0.0;
  double c2 = 0.0;
  std::vector<std::size_t> removed_rows;   // original row indices
  std::vector<std::size_t> removed_cols;   // original column indices
  std::vector<std::size_t> kept_rows;
  std::vector<std::size_t> kept_cols;
  std::optional<TrivialEquilibrium> trivial_equilibrium;
};

// (m - min) / (max - min), entrywise. Affine and order preserving.
Matrix normalize(const Matrix& m);

struct DominanceReduction {
  BimatrixGame game;
  std::vector<std::size_t> removed_rows;
  std::vector<std::size_t> removed_cols;
  std::vector<std::size_t> kept_rows;
  std::vector<std::size_t> kept_cols;
};

// Iteratively removes rows of R never strictly best against any mixed
// column strategy, and likewise dominated columns of C. Rows first, then
// columns, repeated to a fixpoint; at worst a 1x1 game remains.
DominanceReduction remove_dominated(const BimatrixGame& g);

// An all-zero column of R (or row of C) yields an equilibrium directly.
std::optional<TrivialEquilibrium> trivial_zero_check(const BimatrixGame& g);

// Zero-sum values c1 = min_u max_v v^T R u and c2 = min_v max_u v^T C u.
std::pair<double, double> min_max_constants(const BimatrixGame& g);

// Embeds (R, C) as the (l1+l2) x (l1+l2) block matrix [[0, C^T], [R, 0]].
// The first l2 coordinates of a strategy on the result belong to the column
// player, the last l1 to the row player.
SymmetricGame symmetrize(const BimatrixGame& g);

// f_A(x) = max(Ax) - x^T A x. Zero exactly at symmetric equilibria.
double regret(const Matrix& a, const Vec& x);
double regret(const SymmetricGame& g, const ProbVector& x);

struct ExtractedStrategies {
  ProbVector row_strategy;   // x_R
  ProbVector col_strategy;   // x_C
  ProbVector rebalanced;     // x1, payoff-weighted recombination of the blocks
  double m1 = 0.0;           // max(R x_C)
  double m2 = 0.0;           // max(C^T x_R)
  double f_row = 0.0;
  double f_col = 0.0;
};

// Splits a strategy of the symmetrized game into per-player strategies and
// the rebalanced point x1 whose symmetric regret is never worse.
ExtractedStrategies extract_strategies(const ProbVector& x, const BimatrixGame& g);

// 2 (1/c1 + 1/c2) * f: bound on f_row + f_col implied by symmetric regret f.
double regret_transfer_bound(double f_value, double c1, double c2);

}  // namespace sgnash

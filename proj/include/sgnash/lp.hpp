#pragma once

#include <cstddef>
#include <vector>

#include "sgnash/matrix.hpp"
#include "sgnash/prob_vector.hpp"

namespace sgnash {

enum class Sense { LessEqual, Equal, GreaterEqual };

struct LinearConstraint {
  Vec coeffs;
  Sense sense;
  double rhs;
};

// Minimization over nonnegative variables. With simplex_domain set, the
// variables are additionally constrained to the standard simplex. Variables
// listed in free_vars may take any sign (handled by an internal split).
struct LinearProgram {
  Vec objective;
  std::vector<LinearConstraint> constraints;
  bool simplex_domain = false;
  std::vector<std::size_t> free_vars;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

// Duals are reported per input constraint, in input order, with the
// convention of a minimization problem: <= rows have duals <= 0, >= rows
// have duals >= 0, equality rows are unrestricted. At an Optimal return,
// primal value equals sum duals_i * rhs_i (plus the simplex row, if any).
struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  Vec primal;
  Vec duals;
  double value = 0.0;
};

struct LpTolerances {
  double feasibility = 1e-9;
  double optimality = 1e-8;
  double pivot = 1e-10;
};

LpSolution solve_lp(const LinearProgram& lp, const LpTolerances& tol = {});

struct ZeroSumSolution {
  double value = 0.0;       // min_u max_v v^T M u
  ProbVector minimizer;     // u, over the columns of M
  ProbVector maximizer;     // v, over the rows of M
};

ZeroSumSolution solve_zero_sum(const Matrix& m, const LpTolerances& tol = {});

}  // namespace sgnash

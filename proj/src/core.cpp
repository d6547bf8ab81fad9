#include "sgnash/core.hpp"

#include <algorithm>
#include <cmath>

#include "sgnash/errors.hpp"
#include "sgnash/lp.hpp"

namespace sgnash {

namespace {

constexpr double kDominanceMargin = 1e-9;
constexpr double kZeroBlockTol = 1e-10;

Matrix select(const Matrix& m, const std::vector<std::size_t>& rows,
              const std::vector<std::size_t>& cols) {
  Matrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

struct RowMargin {
  double margin;  // best achievable strictness over the other rows
  Vec strategy;   // mixed column strategy attaining it
};

// Maximize s subject to (m_target - m_j) y >= s for all j != target with y
// in the simplex. Row `target` is strictly best for some mixed strategy iff
// the optimum is positive; that strategy is returned alongside.
RowMargin best_row_margin(const Matrix& m, std::size_t target) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (rows == 1) {
    // No competing rows: the single row is vacuously dominant everywhere.
    return {1.0, Vec(cols, 1.0 / static_cast<double>(cols))};
  }
  LinearProgram lp;
  lp.objective.assign(cols + 1, 0.0);
  lp.objective[cols] = -1.0;  // maximize s
  lp.free_vars = {cols};
  LinearConstraint sum_row{Vec(cols + 1, 0.0), Sense::Equal, 1.0};
  for (std::size_t j = 0; j < cols; ++j) sum_row.coeffs[j] = 1.0;
  lp.constraints.push_back(sum_row);
  for (std::size_t r = 0; r < rows; ++r) {
    if (r == target) continue;
    LinearConstraint c{Vec(cols + 1, 0.0), Sense::GreaterEqual, 0.0};
    for (std::size_t j = 0; j < cols; ++j) c.coeffs[j] = m(target, j) - m(r, j);
    c.coeffs[cols] = -1.0;
    lp.constraints.push_back(c);
  }
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) throw LpFailure("dominance program not optimal");
  Vec strategy(sol.primal.begin(), sol.primal.begin() + static_cast<std::ptrdiff_t>(cols));
  return {-sol.value, std::move(strategy)};
}

bool row_dominated(const Matrix& m, std::size_t target) {
  if (m.rows() <= 1) return false;
  return best_row_margin(m, target).margin <= kDominanceMargin;
}

bool col_dominated(const Matrix& m, std::size_t target) {
  if (m.cols() <= 1) return false;
  return best_row_margin(m.transposed(), target).margin <= kDominanceMargin;
}

}  // namespace

SymmetricGame make_symmetric_game(Matrix a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("symmetric game matrix must be square");
  SymmetricGame g;
  g.zero_diagonal = true;
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (a(i, i) != 0.0) g.zero_diagonal = false;
  g.no_zero_column = true;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    bool nonzero = false;
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (a(i, j) != 0.0) nonzero = true;
    if (!nonzero) g.no_zero_column = false;
  }
  g.no_dominated_row = true;
  for (std::size_t i = 0; i < a.rows() && g.no_dominated_row; ++i)
    if (row_dominated(a, i)) g.no_dominated_row = false;
  g.A = std::move(a);
  return g;
}

Matrix normalize(const Matrix& m) {
  if (m.empty()) throw Error("cannot normalize an empty matrix");
  const double lo = min_entry(m.data());
  const double hi = max_entry(m.data());
  if (hi == lo) throw ConstantMatrix("matrix has a single entry value");
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = (m(i, j) - lo) / (hi - lo);
  return out;
}

DominanceReduction remove_dominated(const BimatrixGame& g) {
  std::vector<std::size_t> rows(g.num_rows()), cols(g.num_cols());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
  std::vector<std::size_t> removed_rows, removed_cols;

  bool changed = true;
  while (changed) {
    changed = false;
    // Rows of R, one at a time so ties do not wipe out a duplicated pair.
    bool row_pass = true;
    while (row_pass && rows.size() > 1) {
      row_pass = false;
      const Matrix r = select(g.R, rows, cols);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (row_dominated(r, i)) {
          removed_rows.push_back(rows[i]);
          rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(i));
          row_pass = true;
          changed = true;
          break;
        }
      }
    }
    bool col_pass = true;
    while (col_pass && cols.size() > 1) {
      col_pass = false;
      const Matrix c = select(g.C, rows, cols);
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if (col_dominated(c, j)) {
          removed_cols.push_back(cols[j]);
          cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(j));
          col_pass = true;
          changed = true;
          break;
        }
      }
    }
  }

  DominanceReduction out;
  out.game = BimatrixGame{select(g.R, rows, cols), select(g.C, rows, cols)};
  out.removed_rows = std::move(removed_rows);
  out.removed_cols = std::move(removed_cols);
  out.kept_rows = std::move(rows);
  out.kept_cols = std::move(cols);
  std::sort(out.removed_rows.begin(), out.removed_rows.end());
  std::sort(out.removed_cols.begin(), out.removed_cols.end());
  return out;
}

std::optional<TrivialEquilibrium> trivial_zero_check(const BimatrixGame& g) {
  const std::size_t l1 = g.num_rows();
  const std::size_t l2 = g.num_cols();
  for (std::size_t j = 0; j < l2; ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < l1; ++i)
      if (g.R(i, j) != 0.0) zero = false;
    if (!zero) continue;
    // Row strategy under which column j is the column player's best reply.
    RowMargin rm = best_row_margin(g.C.transposed(), j);
    TrivialEquilibrium eq;
    eq.row_strategy = ProbVector::cleaned(std::move(rm.strategy));
    eq.col_strategy = ProbVector::vertex(l2, j);
    eq.reason = "zero column of R";
    return eq;
  }
  for (std::size_t i = 0; i < l1; ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < l2; ++j)
      if (g.C(i, j) != 0.0) zero = false;
    if (!zero) continue;
    RowMargin rm = best_row_margin(g.R, i);
    TrivialEquilibrium eq;
    eq.row_strategy = ProbVector::vertex(l1, i);
    eq.col_strategy = ProbVector::cleaned(std::move(rm.strategy));
    eq.reason = "zero row of C";
    return eq;
  }
  return std::nullopt;
}

std::pair<double, double> min_max_constants(const BimatrixGame& g) {
  const double c1 = solve_zero_sum(g.R).value;
  const double c2 = solve_zero_sum(g.C.transposed()).value;
  return {c1, c2};
}

SymmetricGame symmetrize(const BimatrixGame& g) {
  const std::size_t l1 = g.num_rows();
  const std::size_t l2 = g.num_cols();
  Matrix a(l1 + l2, l1 + l2, 0.0);
  for (std::size_t i = 0; i < l2; ++i)
    for (std::size_t j = 0; j < l1; ++j) a(i, l2 + j) = g.C(j, i);
  for (std::size_t i = 0; i < l1; ++i)
    for (std::size_t j = 0; j < l2; ++j) a(l2 + i, j) = g.R(i, j);
  SymmetricGame out;
  out.A = std::move(a);
  out.zero_diagonal = true;
  out.no_zero_column = true;
  for (std::size_t j = 0; j < out.A.cols(); ++j) {
    bool nonzero = false;
    for (std::size_t i = 0; i < out.A.rows(); ++i)
      if (out.A(i, j) != 0.0) nonzero = true;
    if (!nonzero) out.no_zero_column = false;
  }
  out.no_dominated_row = false;  // not evaluated here
  return out;
}

double regret(const Matrix& a, const Vec& x) {
  if (a.rows() != x.size() || a.cols() != x.size())
    throw DimensionMismatch("regret: strategy dimension does not match the game");
  const Vec ax = matvec(a, x);
  return max_entry(ax) - dot(x, ax);
}

double regret(const SymmetricGame& g, const ProbVector& x) { return regret(g.A, x.vec()); }

ExtractedStrategies extract_strategies(const ProbVector& x, const BimatrixGame& g) {
  const std::size_t l1 = g.num_rows();
  const std::size_t l2 = g.num_cols();
  if (x.size() != l1 + l2)
    throw DimensionMismatch("extract_strategies: strategy dimension is not l1 + l2");

  Vec col_block(x.vec().begin(), x.vec().begin() + static_cast<std::ptrdiff_t>(l2));
  Vec row_block(x.vec().begin() + static_cast<std::ptrdiff_t>(l2), x.vec().end());
  double col_mass = 0.0, row_mass = 0.0;
  for (double v : col_block) col_mass += v;
  for (double v : row_block) row_mass += v;
  if (col_mass <= kZeroBlockTol || row_mass <= kZeroBlockTol)
    throw ZeroBlock("strategy places no mass on one player's block");

  ExtractedStrategies out;
  out.col_strategy = ProbVector::cleaned(std::move(col_block));
  out.row_strategy = ProbVector::cleaned(std::move(row_block));

  const Vec r_xc = matvec(g.R, out.col_strategy.vec());
  const Vec ct_xr = tmatvec(g.C, out.row_strategy.vec());
  out.m1 = max_entry(r_xc);
  out.m2 = max_entry(ct_xr);
  out.f_row = out.m1 - dot(out.row_strategy.vec(), r_xc);
  out.f_col = out.m2 - dot(out.col_strategy.vec(), ct_xr);

  Vec rebalanced(l1 + l2, 0.0);
  const double scale = out.m1 + out.m2;
  for (std::size_t j = 0; j < l2; ++j) rebalanced[j] = out.m2 * out.col_strategy[j] / scale;
  for (std::size_t i = 0; i < l1; ++i) rebalanced[l2 + i] = out.m1 * out.row_strategy[i] / scale;
  out.rebalanced = ProbVector::cleaned(std::move(rebalanced));
  return out;
}

double regret_transfer_bound(double f_value, double c1, double c2) {
  if (c1 <= 0.0 || c2 <= 0.0)
    throw NonPositiveConstant("transfer bound requires positive zero-sum values");
  return 2.0 * (1.0 / c1 + 1.0 / c2) * f_value;
}

}  // namespace sgnash

#include "sgnash/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sgnash/errors.hpp"
#include "sgnash/matrix.hpp"

namespace sgnash {

namespace {

constexpr double kPivotTol = 1e-10;

struct LinearSystem {
  bool solvable = true;
  Vec particular;
  std::vector<Vec> null_basis;
};

// Gauss elimination with full pivoting; returns a particular solution and a
// basis of the homogeneous solutions so degenerate supports can be probed.
LinearSystem solve_with_null_space(Matrix m, Vec rhs) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> col_of(cols);
  for (std::size_t j = 0; j < cols; ++j) col_of[j] = j;

  std::size_t rank = 0;
  for (std::size_t step = 0; step < std::min(rows, cols); ++step) {
    std::size_t pr = step, pc = step;
    double best = 0.0;
    for (std::size_t i = step; i < rows; ++i)
      for (std::size_t j = step; j < cols; ++j)
        if (std::fabs(m(i, j)) > best) {
          best = std::fabs(m(i, j));
          pr = i;
          pc = j;
        }
    if (best <= kPivotTol) break;
    if (pr != step)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(step, j), m(pr, j));
    if (pr != step) std::swap(rhs[step], rhs[pr]);
    if (pc != step) {
      for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, step), m(i, pc));
      std::swap(col_of[step], col_of[pc]);
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == step) continue;
      const double f = m(i, step) / m(step, step);
      if (f == 0.0) continue;
      for (std::size_t j = step; j < cols; ++j) m(i, j) -= f * m(step, j);
      rhs[i] -= f * rhs[step];
    }
    ++rank;
  }

  LinearSystem out;
  for (std::size_t i = rank; i < rows; ++i)
    if (std::fabs(rhs[i]) > 1e-8) out.solvable = false;
  if (!out.solvable) return out;

  Vec permuted(cols, 0.0);
  for (std::size_t i = 0; i < rank; ++i) permuted[i] = rhs[i] / m(i, i);
  out.particular.assign(cols, 0.0);
  for (std::size_t j = 0; j < cols; ++j) out.particular[col_of[j]] = permuted[j];

  for (std::size_t freev = rank; freev < cols; ++freev) {
    Vec dir(cols, 0.0);
    dir[freev] = 1.0;
    for (std::size_t i = 0; i < rank; ++i) dir[i] = -m(i, freev) / m(i, i);
    Vec unpermuted(cols, 0.0);
    for (std::size_t j = 0; j < cols; ++j) unpermuted[col_of[j]] = dir[j];
    out.null_basis.push_back(std::move(unpermuted));
  }
  return out;
}

void enumerate_supports(std::size_t n, std::vector<std::vector<std::size_t>>& out) {
  for (std::size_t mask = 1; mask < (1ull << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t b = 0; b < n; ++b)
      if (mask & (1ull << b)) s.push_back(b);
    out.push_back(std::move(s));
  }
}

bool near_duplicate(const Vec& a, const Vec& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d <= 1e-8;
}

}  // namespace

OracleResult exact_symmetric_ne(const SymmetricGame& g, double tol) {
  const std::size_t n = g.n();
  if (n > 10) throw TooLarge("exact enumeration limited to n <= 10");

  OracleResult out;
  out.method = "support enumeration";
  out.exhaustive = true;

  std::vector<std::vector<std::size_t>> supports;
  enumerate_supports(n, supports);

  for (const auto& s : supports) {
    const std::size_t k = s.size();
    // Equal payoff on the support, unit mass: unknowns (x_s, v).
    Matrix sys(k + 1, k + 1, 0.0);
    Vec rhs(k + 1, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) sys(i, j) = g.A(s[i], s[j]);
      sys(i, k) = -1.0;
    }
    for (std::size_t j = 0; j < k; ++j) sys(k, j) = 1.0;
    rhs[k] = 1.0;

    const LinearSystem solved = solve_with_null_space(sys, rhs);
    if (!solved.solvable) continue;

    std::vector<Vec> candidates{solved.particular};
    for (const Vec& dir : solved.null_basis) {
      // Walk each null direction to the boundary of the nonnegative cone.
      double lo = -std::numeric_limits<double>::infinity();
      double hi = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < k; ++i) {
        if (std::fabs(dir[i]) < 1e-14) continue;
        const double limit = -solved.particular[i] / dir[i];
        if (dir[i] > 0.0)
          lo = std::max(lo, limit);
        else
          hi = std::min(hi, limit);
      }
      for (double alpha : {lo, hi}) {
        if (!std::isfinite(alpha)) continue;
        Vec c = solved.particular;
        for (std::size_t i = 0; i < k + 1; ++i) c[i] += alpha * dir[i];
        candidates.push_back(std::move(c));
      }
    }

    for (const Vec& cand : candidates) {
      bool nonneg = true;
      for (std::size_t i = 0; i < k; ++i)
        if (cand[i] < -1e-9) nonneg = false;
      if (!nonneg) continue;
      Vec full(n, 0.0);
      double mass = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        full[s[i]] = std::max(0.0, cand[i]);
        mass += full[s[i]];
      }
      if (mass <= 1e-9) continue;
      for (double& x : full) x /= mass;
      if (regret(g.A, full) > tol) continue;
      bool dup = false;
      for (const auto& kept : out.equilibria)
        if (near_duplicate(kept.vec(), full)) dup = true;
      if (!dup) out.equilibria.push_back(ProbVector::cleaned(full));
    }
  }
  return out;
}

namespace {

// Uniform strategies over multisets of size k: nondecreasing index tuples.
std::vector<Vec> k_uniform_strategies(std::size_t dim, std::size_t k, std::size_t cap,
                                      bool& truncated) {
  std::vector<Vec> out;
  std::vector<std::size_t> tuple(k, 0);
  while (true) {
    Vec strat(dim, 0.0);
    for (std::size_t idx : tuple) strat[idx] += 1.0 / static_cast<double>(k);
    out.push_back(std::move(strat));
    if (out.size() >= cap) {
      truncated = true;
      return out;
    }
    std::size_t pos = k;
    while (pos > 0 && tuple[pos - 1] == dim - 1) --pos;
    if (pos == 0) break;
    ++tuple[pos - 1];
    for (std::size_t j = pos; j < k; ++j) tuple[j] = tuple[pos - 1];
  }
  return out;
}

}  // namespace

LmmResult lmm_support_search(const BimatrixGame& g, std::size_t k, std::size_t cap) {
  if (k == 0) throw Error("support size must be at least 1");
  LmmResult out;
  bool truncated = false;
  const auto rows = k_uniform_strategies(g.num_rows(), k, cap, truncated);
  const auto cols = k_uniform_strategies(g.num_cols(), k, cap, truncated);

  double best = std::numeric_limits<double>::infinity();
  for (const Vec& xr : rows) {
    const Vec r_xr = tmatvec(g.R, xr);   // row strategy against R, per column
    const Vec ct_xr = tmatvec(g.C, xr);  // column payoffs
    const double max_col = max_entry(ct_xr);
    for (const Vec& xc : cols) {
      ++out.enumerated;
      if (out.enumerated > cap) {
        truncated = true;
        break;
      }
      const double row_payoff = dot(r_xr, xc);
      const Vec r_xc = matvec(g.R, xc);
      const double f_row = max_entry(r_xc) - row_payoff;
      const double f_col = max_col - dot(ct_xr, xc);
      const double score = std::max(f_row, f_col);
      if (score < best) {
        best = score;
        out.row_strategy = ProbVector::cleaned(xr);
        out.col_strategy = ProbVector::cleaned(xc);
        out.f_row = f_row;
        out.f_col = f_col;
      }
    }
    if (truncated && out.enumerated > cap) break;
  }
  out.truncated = truncated;
  return out;
}

EpsilonCheck verify_epsilon_ne(const BimatrixGame& g, const ProbVector& x_row,
                               const ProbVector& x_col, double epsilon) {
  if (x_row.size() != g.num_rows() || x_col.size() != g.num_cols())
    throw DimensionMismatch("verify_epsilon_ne: strategy dimensions do not match the game");
  EpsilonCheck out;
  const Vec r_xc = matvec(g.R, x_col.vec());
  const Vec ct_xr = tmatvec(g.C, x_row.vec());
  out.f_row = max_entry(r_xc) - dot(x_row.vec(), r_xc);
  out.f_col = max_entry(ct_xr) - dot(x_col.vec(), ct_xr);
  out.ok = out.f_row <= epsilon + 1e-12 && out.f_col <= epsilon + 1e-12;
  return out;
}

}  // namespace sgnash

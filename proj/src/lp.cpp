#include "sgnash/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sgnash/errors.hpp"

namespace sgnash {

namespace {

constexpr double kEnterTol = 1e-9;

struct Tableau {
  std::size_t rows = 0;
  std::size_t cols = 0;  // excludes the rhs column
  std::vector<Vec> t;    // rows x (cols + 1), rhs last
  std::vector<std::size_t> basis;
  std::size_t art_begin = 0;

  double& rhs(std::size_t i) { return t[i][cols]; }
  double rhs(std::size_t i) const { return t[i][cols]; }
};

void pivot(Tableau& tb, std::size_t r, std::size_t c) {
  Vec& prow = tb.t[r];
  const double p = prow[c];
  for (double& x : prow) x /= p;
  prow[c] = 1.0;
  for (std::size_t i = 0; i < tb.rows; ++i) {
    if (i == r) continue;
    const double f = tb.t[i][c];
    if (f == 0.0) continue;
    for (std::size_t j = 0; j <= tb.cols; ++j) tb.t[i][j] -= f * prow[j];
    tb.t[i][c] = 0.0;
  }
  tb.basis[r] = c;
}

Vec reduced_costs(const Tableau& tb, const Vec& costs) {
  Vec cb(tb.rows);
  for (std::size_t i = 0; i < tb.rows; ++i) cb[i] = costs[tb.basis[i]];
  Vec r(tb.cols);
  for (std::size_t j = 0; j < tb.cols; ++j) {
    double z = 0.0;
    for (std::size_t i = 0; i < tb.rows; ++i) z += cb[i] * tb.t[i][j];
    r[j] = costs[j] - z;
  }
  return r;
}

enum class SimplexEnd { Optimal, Unbounded };

// Bland's rule throughout: entering column is the lowest index with a
// negative reduced cost, leaving row breaks ratio ties by lowest basic
// index. In phase two artificial columns are barred from entering and any
// row holding a basic artificial blocks at step zero so artificials never
// leave the origin again.
SimplexEnd run_simplex(Tableau& tb, const Vec& costs, bool phase_two, const LpTolerances& tol,
                       std::size_t max_iters) {
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    const Vec r = reduced_costs(tb, costs);
    std::size_t enter = tb.cols;
    for (std::size_t j = 0; j < tb.cols; ++j) {
      if (phase_two && j >= tb.art_begin) continue;
      if (r[j] < -kEnterTol) {
        enter = j;
        break;
      }
    }
    if (enter == tb.cols) return SimplexEnd::Optimal;

    std::size_t leave = tb.rows;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < tb.rows; ++i) {
      const double a = tb.t[i][enter];
      double ratio;
      if (phase_two && tb.basis[i] >= tb.art_begin && std::fabs(a) > tol.pivot) {
        ratio = 0.0;  // degenerate pivot that keeps the artificial at zero
      } else if (a > tol.pivot) {
        ratio = tb.rhs(i) / a;
      } else {
        continue;
      }
      if (ratio < best_ratio - 1e-15 ||
          (ratio <= best_ratio + 1e-15 && (leave == tb.rows || tb.basis[i] < tb.basis[leave]))) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave == tb.rows) return SimplexEnd::Unbounded;
    pivot(tb, leave, enter);
  }
  throw NumericalFailure("simplex iteration cap exceeded");
}

struct Standardized {
  std::size_t n_orig = 0;
  std::size_t n_struct = 0;  // structural columns after free-variable split
  std::vector<std::size_t> neg_col;  // per original var: split column or npos
  std::vector<double> row_flip;      // +1 / -1 applied to each internal row
  std::vector<Sense> row_sense;      // sense after flipping
  std::vector<LinearConstraint> rows;
  bool has_simplex_row = false;
};

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const LpTolerances& tol) {
  const std::size_t n = lp.objective.size();
  if (n == 0) throw Error("empty linear program");
  for (const auto& c : lp.constraints)
    if (c.coeffs.size() != n) throw DimensionMismatch("constraint dimension mismatch");
  for (std::size_t j : lp.free_vars)
    if (j >= n) throw Error("free variable index out of range");

  Standardized st;
  st.n_orig = n;
  st.neg_col.assign(n, kNone);
  std::size_t extra = 0;
  for (std::size_t j : lp.free_vars) st.neg_col[j] = n + extra++;
  st.n_struct = n + extra;

  st.rows = lp.constraints;
  if (lp.simplex_domain) {
    LinearConstraint sum_row{Vec(n, 1.0), Sense::Equal, 1.0};
    st.rows.push_back(sum_row);
    st.has_simplex_row = true;
  }
  const std::size_t m = st.rows.size();
  st.row_flip.assign(m, 1.0);
  st.row_sense.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (st.rows[i].rhs < 0.0) {
      st.row_flip[i] = -1.0;
      for (double& a : st.rows[i].coeffs) a = -a;
      st.rows[i].rhs = -st.rows[i].rhs;
      if (st.rows[i].sense == Sense::LessEqual)
        st.rows[i].sense = Sense::GreaterEqual;
      else if (st.rows[i].sense == Sense::GreaterEqual)
        st.rows[i].sense = Sense::LessEqual;
    }
    st.row_sense[i] = st.rows[i].sense;
  }

  std::size_t n_slack = 0;
  for (const auto& r : st.rows)
    if (r.sense != Sense::Equal) ++n_slack;

  Tableau tb;
  tb.rows = m;
  tb.art_begin = st.n_struct + n_slack;
  tb.cols = tb.art_begin + m;
  tb.t.assign(m, Vec(tb.cols + 1, 0.0));
  tb.basis.resize(m);

  std::size_t slack_at = st.n_struct;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = st.rows[i];
    for (std::size_t j = 0; j < n; ++j) {
      tb.t[i][j] = row.coeffs[j];
      if (st.neg_col[j] != kNone) tb.t[i][st.neg_col[j]] = -row.coeffs[j];
    }
    if (row.sense == Sense::LessEqual)
      tb.t[i][slack_at++] = 1.0;
    else if (row.sense == Sense::GreaterEqual)
      tb.t[i][slack_at++] = -1.0;
    tb.t[i][tb.art_begin + i] = 1.0;
    tb.rhs(i) = row.rhs;
    tb.basis[i] = tb.art_begin + i;
  }

  const std::size_t max_iters = 50 * (tb.cols + m) + 50;

  // Phase one: minimize the artificial mass.
  Vec phase1(tb.cols + 1, 0.0);
  for (std::size_t j = tb.art_begin; j < tb.cols; ++j) phase1[j] = 1.0;
  if (run_simplex(tb, phase1, /*phase_two=*/false, tol, max_iters) == SimplexEnd::Unbounded)
    throw NumericalFailure("phase one reported unbounded");
  double art_mass = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    if (tb.basis[i] >= tb.art_begin) art_mass += tb.rhs(i);
  if (art_mass > tol.feasibility) return LpSolution{LpStatus::Infeasible, {}, {}, 0.0};

  // Pivot leftover artificials out of the basis where a nonzero column exists.
  for (std::size_t i = 0; i < m; ++i) {
    if (tb.basis[i] < tb.art_begin) continue;
    for (std::size_t j = 0; j < tb.art_begin; ++j) {
      if (std::fabs(tb.t[i][j]) > tol.pivot) {
        pivot(tb, i, j);
        break;
      }
    }
  }

  Vec phase2(tb.cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    phase2[j] = lp.objective[j];
    if (st.neg_col[j] != kNone) phase2[st.neg_col[j]] = -lp.objective[j];
  }
  if (run_simplex(tb, phase2, /*phase_two=*/true, tol, max_iters) == SimplexEnd::Unbounded)
    return LpSolution{LpStatus::Unbounded, {}, {}, 0.0};

  Vec full(tb.cols, 0.0);
  for (std::size_t i = 0; i < m; ++i) full[tb.basis[i]] = tb.rhs(i);
  Vec primal(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    primal[j] = full[j];
    if (st.neg_col[j] != kNone) primal[j] -= full[st.neg_col[j]];
  }

  // Duals read off the artificial columns, whose original content was the
  // identity: reduced cost there is exactly -y_i.
  const Vec rc = reduced_costs(tb, phase2);
  Vec all_duals(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) all_duals[i] = -rc[tb.art_begin + i] * st.row_flip[i];

  if (lp.simplex_domain) {
    double sum = 0.0;
    for (double& x : primal) {
      if (x < 0.0 && x > -1e-9) x = 0.0;
      sum += x;
    }
    if (sum > 0.0)
      for (double& x : primal) x /= sum;
  }

  double value = dot(lp.objective, primal);

  // Certify the claimed optimum before returning it.
  const std::size_t n_user = lp.constraints.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& orig = i < n_user ? lp.constraints[i]
                                  : LinearConstraint{Vec(n, 1.0), Sense::Equal, 1.0};
    const double ax = dot(orig.coeffs, primal);
    const double resid = ax - orig.rhs;
    bool ok = true;
    switch (orig.sense) {
      case Sense::LessEqual: ok = resid <= tol.feasibility; break;
      case Sense::GreaterEqual: ok = resid >= -tol.feasibility; break;
      case Sense::Equal: ok = std::fabs(resid) <= tol.feasibility; break;
    }
    if (!ok) throw NumericalFailure("primal feasibility residual out of tolerance");
    if (std::fabs(all_duals[i] * resid) > tol.optimality)
      throw NumericalFailure("complementary slackness residual out of tolerance");
  }
  double dual_value = 0.0;
  for (std::size_t i = 0; i < n_user; ++i) dual_value += all_duals[i] * lp.constraints[i].rhs;
  if (lp.simplex_domain) dual_value += all_duals[m - 1];
  if (std::fabs(value - dual_value) > tol.optimality)
    throw NumericalFailure("strong duality gap out of tolerance");
  for (std::size_t j = 0; j < n; ++j) {
    double red = lp.objective[j];
    for (std::size_t i = 0; i < n_user; ++i) red -= all_duals[i] * lp.constraints[i].coeffs[j];
    if (lp.simplex_domain) red -= all_duals[m - 1];
    const bool is_free = st.neg_col[j] != kNone;
    if (is_free ? std::fabs(red) > tol.optimality : red < -tol.optimality)
      throw NumericalFailure("dual feasibility residual out of tolerance");
    if (!is_free && std::fabs(primal[j] * red) > tol.optimality)
      throw NumericalFailure("reduced cost complementarity out of tolerance");
  }

  LpSolution sol;
  sol.status = LpStatus::Optimal;
  sol.primal = std::move(primal);
  sol.duals.assign(all_duals.begin(), all_duals.begin() + static_cast<std::ptrdiff_t>(n_user));
  sol.value = value;
  return sol;
}

ZeroSumSolution solve_zero_sum(const Matrix& m, const LpTolerances& tol) {
  if (m.empty()) throw Error("empty matrix");
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();

  // Variables (u, t): minimize t subject to  M u <= t e,  u in the simplex.
  // Entries are in [0, 1], so t >= 0 never binds at the optimum.
  LinearProgram lp;
  lp.objective.assign(cols + 1, 0.0);
  lp.objective[cols] = 1.0;
  LinearConstraint sum_row{Vec(cols + 1, 0.0), Sense::Equal, 1.0};
  for (std::size_t j = 0; j < cols; ++j) sum_row.coeffs[j] = 1.0;
  lp.constraints.push_back(sum_row);
  for (std::size_t i = 0; i < rows; ++i) {
    LinearConstraint c{Vec(cols + 1, 0.0), Sense::LessEqual, 0.0};
    for (std::size_t j = 0; j < cols; ++j) c.coeffs[j] = m(i, j);
    c.coeffs[cols] = -1.0;
    lp.constraints.push_back(c);
  }

  const LpSolution sol = solve_lp(lp, tol);
  if (sol.status != LpStatus::Optimal) throw LpFailure("zero-sum value program not optimal");

  ZeroSumSolution out;
  out.value = sol.value;
  out.minimizer = ProbVector::cleaned(Vec(sol.primal.begin(),
                                          sol.primal.begin() + static_cast<std::ptrdiff_t>(cols)));
  Vec v(rows, 0.0);
  double mass = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    v[i] = std::max(0.0, -sol.duals[i + 1]);
    mass += v[i];
  }
  out.maximizer = mass > 1e-12 ? ProbVector::cleaned(std::move(v)) : ProbVector::uniform(rows);
  return out;
}

}  // namespace sgnash

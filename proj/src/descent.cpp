#include "sgnash/descent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sgnash/errors.hpp"
#include "sgnash/lp.hpp"
#include "sgnash/rng.hpp"

namespace sgnash {

namespace {

constexpr double kSupportTol = 1e-9;

double regret_raw(const Matrix& a, const Vec& x) {
  const Vec ax = matvec(a, x);
  return max_entry(ax) - dot(x, ax);
}

// Euclidean projection onto the simplex.
Vec project_simplex(Vec v) {
  Vec u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, theta = 0.0;
  std::size_t rho = 0;
  double css_at_rho = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    css += u[j];
    const double t = (css - 1.0) / static_cast<double>(j + 1);
    if (u[j] > t) {
      rho = j + 1;
      css_at_rho = css;
    }
  }
  theta = (css_at_rho - 1.0) / static_cast<double>(rho);
  for (double& x : v) x = std::max(0.0, x - theta);
  return v;
}

struct EpigraphSolution {
  double value = 0.0;   // minimum of the derivative over the feasible set
  Vec direction;        // full-dimension minimizer
  Vec dual;             // full-dimension dual over the suppmax rows
};

// min over the face (or the whole simplex) of
//   max_{i in S} (A x')_i - b . x'  + constant
// as an LP with an epigraph variable. Payoffs are nonnegative, so the
// epigraph variable never needs to go below zero.
EpigraphSolution solve_direction_lp(const Matrix& a, const std::vector<std::size_t>& s,
                                    const Vec& b, double constant,
                                    const std::vector<std::size_t>& face) {
  const std::size_t n = a.rows();
  const std::size_t f = face.size();
  LinearProgram lp;
  lp.objective.assign(f + 1, 0.0);
  for (std::size_t j = 0; j < f; ++j) lp.objective[j] = -b[face[j]];
  lp.objective[f] = 1.0;

  LinearConstraint sum_row{Vec(f + 1, 0.0), Sense::Equal, 1.0};
  for (std::size_t j = 0; j < f; ++j) sum_row.coeffs[j] = 1.0;
  lp.constraints.push_back(sum_row);
  for (std::size_t i : s) {
    LinearConstraint c{Vec(f + 1, 0.0), Sense::LessEqual, 0.0};
    for (std::size_t j = 0; j < f; ++j) c.coeffs[j] = a(i, face[j]);
    c.coeffs[f] = -1.0;
    lp.constraints.push_back(c);
  }

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) throw LpFailure("direction subproblem not optimal");

  EpigraphSolution out;
  out.value = sol.value + constant;
  out.direction.assign(n, 0.0);
  for (std::size_t j = 0; j < f; ++j) out.direction[face[j]] = std::max(0.0, sol.primal[j]);
  out.dual.assign(n, 0.0);
  double mass = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double w = std::max(0.0, -sol.duals[k + 1]);
    out.dual[s[k]] = w;
    mass += w;
  }
  if (mass > 1e-12) {
    for (double& w : out.dual) w /= mass;
  } else {
    // Degenerate LP with vanishing duals: fall back to uniform weight on S.
    for (std::size_t i : s) out.dual[i] = 1.0 / static_cast<double>(s.size());
  }
  return out;
}

std::vector<std::size_t> full_face(std::size_t n) {
  std::vector<std::size_t> face(n);
  for (std::size_t i = 0; i < n; ++i) face[i] = i;
  return face;
}

}  // namespace

std::vector<std::size_t> suppmax(const Vec& v, double tol) {
  const double m = max_entry(v);
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] >= m - tol) s.push_back(i);
  return s;
}

double gradient_d(const Matrix& a, const ProbVector& x, const ProbVector& x_prime,
                  double suppmax_tol) {
  if (x.size() != a.rows() || x_prime.size() != a.rows())
    throw DimensionMismatch("gradient_d: dimension mismatch");
  const Vec ax = matvec(a, x.vec());
  const Vec axp = matvec(a, x_prime.vec());
  const auto s = suppmax(ax, suppmax_tol);
  double max_s = -std::numeric_limits<double>::infinity();
  for (std::size_t i : s) max_s = std::max(max_s, axp[i]);
  const double x_a_xp = dot(x.vec(), axp);
  const double xp_a_x = dot(x_prime.vec(), ax);
  const double x_a_x = dot(x.vec(), ax);
  const double f = max_entry(ax) - x_a_x;
  return max_s - x_a_xp - xp_a_x + x_a_x - f;
}

GradientEval direction_subproblem(const Matrix& a, const ProbVector& x,
                                  const ConstraintRegion& region, const DescentOptions& opts) {
  const std::size_t n = a.rows();
  if (x.size() != n) throw DimensionMismatch("direction_subproblem: dimension mismatch");
  const Vec ax = matvec(a, x.vec());
  const auto s = suppmax(ax, opts.suppmax_tol);
  Vec b = tmatvec(a, x.vec());
  for (std::size_t j = 0; j < n; ++j) b[j] += ax[j];
  const double constant = 2.0 * dot(x.vec(), ax) - max_entry(ax);

  GradientEval out;
  out.support_max = s;

  if (std::holds_alternative<FullSimplex>(region) || std::holds_alternative<SupportFace>(region)) {
    const auto face = std::holds_alternative<FullSimplex>(region)
                          ? full_face(n)
                          : std::get<SupportFace>(region).support;
    if (face.empty()) throw InfeasibleRegion("empty support face");
    EpigraphSolution sol = solve_direction_lp(a, s, b, constant, face);
    out.value = sol.value;
    out.direction = ProbVector::cleaned(std::move(sol.direction));
    out.dual = ProbVector::cleaned(std::move(sol.dual));
    return out;
  }

  const auto& ball = std::get<SpectralBall>(region);
  if (ball.radius_sq < 0.0) throw InfeasibleRegion("negative squared radius");

  // Approximate minimization over the ball by projected subgradient steps;
  // the dual still comes from the exact whole-simplex LP, which is where
  // dual vectors are defined.
  EpigraphSolution full = solve_direction_lp(a, s, b, constant, full_face(n));
  out.dual = ProbVector::cleaned(std::move(full.dual));

  auto objective = [&](const Vec& z) {
    double max_s = -std::numeric_limits<double>::infinity();
    for (std::size_t i : s) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += a(i, j) * z[j];
      max_s = std::max(max_s, row);
    }
    return max_s - dot(b, z);
  };
  auto clip_to_ball = [&](Vec z) {
    Vec diff = sub(z, ball.center.vec());
    const double d2 = quad_form(ball.a_plus, diff, diff);
    if (d2 > ball.radius_sq && d2 > 0.0) {
      const double theta = ball.radius_sq > 0.0 ? std::sqrt(ball.radius_sq / d2) : 0.0;
      for (std::size_t j = 0; j < n; ++j)
        z[j] = ball.center[j] + theta * (z[j] - ball.center[j]);
    }
    return z;
  };

  Vec z = clip_to_ball(x.vec());
  Vec best = z;
  double best_val = objective(z);
  const std::size_t iters = opts.ball_iter_per_dim * n;
  for (std::size_t k = 0; k < iters; ++k) {
    // Subgradient of the active best-reply row.
    std::size_t arg = s[0];
    double arg_val = -std::numeric_limits<double>::infinity();
    for (std::size_t i : s) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += a(i, j) * z[j];
      if (row > arg_val) {
        arg_val = row;
        arg = i;
      }
    }
    const double alpha = 0.5 / std::sqrt(static_cast<double>(k + 1));
    Vec step(n);
    for (std::size_t j = 0; j < n; ++j) step[j] = z[j] - alpha * (a(arg, j) - b[j]);
    z = clip_to_ball(project_simplex(std::move(step)));
    const double val = objective(z);
    if (val < best_val) {
      best_val = val;
      best = z;
    }
  }
  out.value = best_val + constant;
  out.direction = ProbVector::cleaned(std::move(best));
  return out;
}

std::pair<double, double> line_search(const Matrix& a, const ProbVector& x,
                                      const ProbVector& x_prime, double suppmax_tol) {
  const std::size_t n = a.rows();
  if (gradient_d(a, x, x_prime, suppmax_tol) >= 0.0)
    throw NotDescent("line_search requires a strict descent direction");

  const Vec u = matvec(a, x.vec());
  const Vec v = matvec(a, x_prime.vec());
  const double alpha = dot(x.vec(), u);
  const double beta = dot(x.vec(), v) + dot(x_prime.vec(), u);
  const double gamma = dot(x_prime.vec(), v);
  const double q0 = alpha;
  const double q1 = beta - 2.0 * alpha;
  const double q2 = alpha - beta + gamma;

  auto envelope = [&](double t) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, u[i] + t * (v[i] - u[i]));
    return m;
  };
  auto f_at = [&](double t) { return envelope(t) - (q0 + t * (q1 + t * q2)); };

  Vec knots{0.0, 1.0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double denom = (v[i] - u[i]) - (v[j] - u[j]);
      if (std::fabs(denom) < 1e-14) continue;
      const double t = (u[j] - u[i]) / denom;
      if (t > 0.0 && t < 1.0) knots.push_back(t);
    }
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end(),
                          [](double a_, double b_) { return std::fabs(a_ - b_) < 1e-12; }),
              knots.end());

  double best_t = 0.0;
  double best_f = f_at(0.0);
  auto consider = [&](double t) {
    const double f = f_at(t);
    if (f < best_f - 1e-15 || (f < best_f + 1e-15 && t < best_t)) {
      best_f = f;
      best_t = t;
    }
  };
  consider(1.0);
  for (std::size_t kidx = 0; kidx + 1 < knots.size(); ++kidx) {
    const double ta = knots[kidx];
    const double tb = knots[kidx + 1];
    consider(ta);
    consider(tb);
    const double tm = 0.5 * (ta + tb);
    std::size_t active = 0;
    double active_val = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const double g = u[i] + tm * (v[i] - u[i]);
      if (g > active_val) {
        active_val = g;
        active = i;
      }
    }
    // On this piece f(t) = g_active(t) - q(t); minimize the quadratic.
    const double c2 = -q2;
    const double c1 = (v[active] - u[active]) - q1;
    if (c2 > 0.0) {
      const double tv = -c1 / (2.0 * c2);
      if (tv > ta && tv < tb) consider(tv);
    }
  }
  return {best_t, best_f};
}

StationaryResult find_stationary(const Matrix& a, const ProbVector& x0,
                                 const ConstraintRegion& region, const DescentOptions& opts) {
  const std::size_t n = a.rows();
  if (x0.size() != n) throw DimensionMismatch("find_stationary: dimension mismatch");
  const std::size_t max_iter = opts.max_iter > 0 ? opts.max_iter : 10 * n * n;

  StationaryResult out;
  out.full_simplex = std::holds_alternative<FullSimplex>(region);
  ProbVector x = x0;
  double f = regret_raw(a, x.vec());
  out.trace.push_back(f);

  bool have_dual = false;
  ProbVector dual;
  while (out.iterations < max_iter) {
    GradientEval eval = direction_subproblem(a, x, region, opts);
    if (eval.value >= -opts.stat_tol) {
      out.converged = true;
      if (out.full_simplex) {
        dual = eval.dual;
        have_dual = true;
      }
      break;
    }
    double step = 0.0, f_new = f;
    try {
      std::tie(step, f_new) = line_search(a, x, eval.direction, opts.suppmax_tol);
    } catch (const NotDescent&) {
      break;  // numerically flat despite the LP value; stop without converging
    }
    if (f_new >= f - 1e-15 || step <= 0.0) break;
    x = mix(x, eval.direction, step);
    f = regret_raw(a, x.vec());
    out.trace.push_back(f);
    ++out.iterations;
  }

  if (!have_dual) {
    GradientEval final_eval = direction_subproblem(a, x, ConstraintRegion{FullSimplex{}}, opts);
    dual = final_eval.dual;
  }
  out.x_star = x;
  out.w_star = dual;
  out.f_x = f;
  out.f_w = regret_raw(a, dual.vec());
  return out;
}

CertificateReport certify_stationarity(const Matrix& a, const StationaryResult& r,
                                       std::size_t sample_count, std::uint64_t seed, double tol) {
  if (!r.converged) throw Error("certify_stationarity requires a converged result");
  const std::size_t n = a.rows();
  CertificateReport report;

  const Vec& xs = r.x_star.vec();
  const Vec& ws = r.w_star.vec();
  const Vec ax_star = matvec(a, xs);
  const auto s = suppmax(ax_star, kSupportTol);
  const double fx = regret_raw(a, xs);
  const double fw = regret_raw(a, ws);
  const double q3 = dot(xs, ax_star);

  auto add = [&](const std::string& name, const Vec& witness, double lhs, double rhs) {
    report.violations.push_back(CertificateViolation{name, witness, lhs, rhs});
  };

  std::vector<ProbVector> points;
  points.reserve(n + sample_count);
  for (std::size_t i = 0; i < n; ++i) points.push_back(ProbVector::vertex(n, i));
  SplitMix64 rng(seed);
  for (std::size_t k = 0; k < sample_count; ++k) points.push_back(random_simplex_point(rng, n));

  for (const auto& p : points) {
    const Vec& xv = p.vec();
    const Vec ax = matvec(a, xv);
    double max_s = -std::numeric_limits<double>::infinity();
    for (std::size_t i : s) max_s = std::max(max_s, ax[i]);
    const double max_all = max_entry(ax);
    const double q1 = dot(xs, ax);
    const double q2 = dot(xv, ax_star);

    const double stat_max = max_s - q1 - q2 + q3 - fx;
    ++report.checks;
    if (stat_max < -tol) add("stationarity_max_form", xv, stat_max, 0.0);

    const double stat_dual = dot(ws, ax) - q1 - q2 + q3 - fx;
    ++report.checks;
    if (stat_dual < -tol) add("stationarity_dual_form", xv, stat_dual, 0.0);

    const Vec diff = sub(xv, xs);
    const double quad = quad_form(a, diff, diff);
    const double growth_lhs = fx - (max_all - dot(xv, ax)) + (max_all - max_s);
    ++report.checks;
    if (growth_lhs > quad + tol) add("quadratic_growth", xv, growth_lhs, quad);
  }

  {
    const Vec diff = sub(ws, xs);
    const double rhs = quad_form(a, diff, diff);
    ++report.checks;
    if (fx > rhs + tol) add("dual_distance_bound", ws, fx, rhs);
  }
  {
    const Vec aw = matvec(a, ws);
    const double rhs = max_entry(aw) - dot(xs, aw);
    ++report.checks;
    if (2.0 * fx + fw > rhs + tol) add("dual_payoff_bound", ws, 2.0 * fx + fw, rhs);
  }
  {
    ++report.checks;
    if (std::min(fx, fw) > 1.0 / 3.0 + tol)
      add("one_third_bound", ws, std::min(fx, fw), 1.0 / 3.0);
  }
  {
    ++report.checks;
    bool contained = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (ws[i] > kSupportTol && std::find(s.begin(), s.end(), i) == s.end()) contained = false;
    }
    if (!contained) add("dual_support_containment", ws, 1.0, 0.0);
  }
  {
    GradientEval eval = direction_subproblem(a, r.x_star, ConstraintRegion{FullSimplex{}});
    ++report.checks;
    if (eval.value < -tol) add("stationarity_lp_min", eval.direction.vec(), eval.value, 0.0);
  }
  return report;
}

PairBoundCheck stationary_pair_bound(const Matrix& a, const StationaryResult& r1,
                                     const StationaryResult& r2, const Spectrum* spectrum,
                                     double tol) {
  PairBoundCheck out;
  const Vec diff = sub(r1.x_star.vec(), r2.x_star.vec());
  out.lhs = std::fabs(regret_raw(a, r1.x_star.vec()) - regret_raw(a, r2.x_star.vec()));
  out.quadratic_rhs = quad_form(a, diff, diff);
  out.ok = out.lhs <= out.quadratic_rhs + tol;
  if (spectrum != nullptr) {
    double d2 = 0.0;
    for (std::size_t r = 0; r < spectrum->positive_count; ++r) {
      const double proj = dot(spectrum->eigenvectors[r], diff);
      d2 += spectrum->eigenvalues[r] * proj * proj;
    }
    out.metric_rhs = 0.5 * d2;
    out.ok = out.ok && out.lhs <= out.metric_rhs + tol;
  }
  return out;
}

}  // namespace sgnash

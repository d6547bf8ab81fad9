#include "sgnash/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "sgnash/errors.hpp"
#include "sgnash/oracle.hpp"

namespace sgnash {

namespace {

Matrix symmetric_sum(const Matrix& a) {
  Matrix s(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = a(i, j) + a(j, i);
  return s;
}

Vec lift(const Vec& x, const std::vector<std::size_t>& positions, std::size_t n) {
  Vec out(n, 0.0);
  for (std::size_t i = 0; i < positions.size(); ++i) out[positions[i]] = x[i];
  return out;
}

}  // namespace

SearchPlan make_plan(double epsilon, std::size_t n, std::size_t cap, SearchMode mode,
                     std::uint64_t seed) {
  if (epsilon <= 0.0 || epsilon > 1.0) throw Error("epsilon must lie in (0, 1]");
  const double inv = 1.0 / epsilon;
  const auto k = static_cast<std::size_t>(std::llround(inv));
  if (std::fabs(inv - static_cast<double>(k)) > 1e-9)
    throw Error("1/epsilon must be an integer");
  SearchPlan plan;
  plan.epsilon = epsilon;
  plan.support_size = std::min(k, n);
  plan.region_count_bound = std::pow(static_cast<double>(n), inv);
  plan.cap = cap;
  plan.mode = mode;
  plan.seed = seed;
  return plan;
}

SupportEnumeration enumerate_supports(std::size_t n, std::size_t k, std::size_t cap) {
  if (k == 0 || k > n) throw Error("support size must lie in [1, n]");
  SupportEnumeration out;
  for (std::size_t size = 1; size <= k; ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      if (out.supports.size() >= cap) {
        out.truncated = true;
        return out;
      }
      out.supports.push_back(idx);
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == n - size + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

ProbVector region_start(const std::vector<std::size_t>& support, std::size_t n) {
  if (support.empty()) throw Error("region start needs a nonempty support");
  Vec x(n, 0.0);
  for (std::size_t i : support) x[i] = 1.0 / static_cast<double>(support.size());
  return ProbVector::cleaned(std::move(x));
}

SearchOutcome multi_start_search(const SymmetricGame& g, const Spectrum& s,
                                 const SearchPlan& plan, const DescentOptions& descent) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = g.n();

  SearchOutcome out;
  out.guarantee = plan.epsilon * s.xi;

  PositivePart pos;
  if (plan.mode == SearchMode::BallConstrained) pos = positive_part(s);

  const SupportEnumeration en = enumerate_supports(n, plan.support_size, plan.cap);
  out.truncated = en.truncated;

  for (const auto& support : en.supports) {
    RegionRecord record;
    record.support = support;
    const ProbVector start = region_start(support, n);
    ConstraintRegion region{FullSimplex{}};
    if (plan.mode == SearchMode::BallConstrained)
      region = SpectralBall{start, plan.epsilon * s.xi, pos.a_plus};
    try {
      record.result = find_stationary(g.A, start, region, descent);
    } catch (const Error& e) {
      record.failed = true;
      record.error = e.what();
    }
    out.regions.push_back(std::move(record));
    ++out.regions_explored;
  }

  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  for (std::size_t i = 0; i < out.regions.size(); ++i) {
    if (out.regions[i].failed) continue;
    if (out.regions[i].result.f_x < best) {
      best = out.regions[i].result.f_x;
      out.best_index = i;
      found = true;
    }
  }
  if (!found) throw AllRegionsFailed("no region produced a descent result");
  out.best = out.regions[out.best_index].result;
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

PlannerReport planner(std::size_t n, const Spectrum& s, double epsilon) {
  return planner_values(n, s.xi, s.positive_count, epsilon);
}

PlannerReport planner_values(std::size_t n, double xi, std::size_t positive_count,
                             double epsilon) {
  if (epsilon <= 0.0 || epsilon >= 1.0) throw Error("planner epsilon must lie in (0, 1)");
  PlannerReport out;
  out.epsilon = epsilon;
  out.spectral_exponent = xi / epsilon;
  out.sqrt_m_exponent = std::sqrt(static_cast<double>(positive_count)) / epsilon;
  const double ln_n = std::log(static_cast<double>(n));
  out.baseline_exponent = 12.0 * ln_n / (epsilon * epsilon);

  // Crossover where the support-enumeration exponent matches ours:
  // 12 ln n / sqrt(n) = epsilon, on the branch where the left side falls.
  auto h = [](double x) { return 12.0 * std::log(x) / std::sqrt(x); };
  double lo = 60.0, hi = 1e16;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (h(mid) > epsilon)
      lo = mid;
    else
      hi = mid;
  }
  out.crossover_n = 0.5 * (lo + hi);
  return out;
}

BimatrixSolution solve_bimatrix(const BimatrixGame& g, double epsilon, const SolveOptions& opts) {
  if (g.R.empty() || g.R.rows() != g.C.rows() || g.R.cols() != g.C.cols())
    throw DimensionMismatch("bimatrix game needs two equally shaped nonempty matrices");
  const std::size_t l1 = g.num_rows();
  const std::size_t l2 = g.num_cols();

  BimatrixSolution sol;

  bool r_constant = false, c_constant = false;
  Matrix rn, cn;
  try {
    rn = normalize(g.R);
  } catch (const ConstantMatrix&) {
    r_constant = true;
  }
  try {
    cn = normalize(g.C);
  } catch (const ConstantMatrix&) {
    c_constant = true;
  }

  if (r_constant || c_constant) {
    // A constant payoff matrix makes its owner indifferent; the other
    // player simply best-responds, so a pure equilibrium can be read off.
    if (r_constant && c_constant) {
      sol.row_strategy = ProbVector::vertex(l1, 0);
      sol.col_strategy = ProbVector::vertex(l2, 0);
      sol.trivial_reason = "both payoff matrices are constant";
    } else if (r_constant) {
      std::size_t best_col = 0;
      for (std::size_t j = 1; j < l2; ++j)
        if (cn(0, j) > cn(0, best_col)) best_col = j;
      sol.row_strategy = ProbVector::vertex(l1, 0);
      sol.col_strategy = ProbVector::vertex(l2, best_col);
      sol.trivial_reason = "row payoff matrix is constant";
    } else {
      std::size_t best_row = 0;
      for (std::size_t i = 1; i < l1; ++i)
        if (rn(i, 0) > rn(best_row, 0)) best_row = i;
      sol.row_strategy = ProbVector::vertex(l1, best_row);
      sol.col_strategy = ProbVector::vertex(l2, 0);
      sol.trivial_reason = "column payoff matrix is constant";
    }
    sol.f_row = 0.0;
    sol.f_col = 0.0;
    return sol;
  }

  const BimatrixGame gn{rn, cn};
  DominanceReduction red = remove_dominated(gn);
  sol.reduction.removed_rows = red.removed_rows;
  sol.reduction.removed_cols = red.removed_cols;
  sol.reduction.kept_rows = red.kept_rows;
  sol.reduction.kept_cols = red.kept_cols;
  const BimatrixGame& gr = red.game;
  const std::size_t k1 = gr.num_rows();
  const std::size_t k2 = gr.num_cols();

  if (auto trivial = trivial_zero_check(gr)) {
    sol.reduction.trivial_equilibrium = trivial;
    sol.trivial_reason = trivial->reason;
    sol.row_strategy = ProbVector::cleaned(lift(trivial->row_strategy.vec(), red.kept_rows, l1));
    sol.col_strategy = ProbVector::cleaned(lift(trivial->col_strategy.vec(), red.kept_cols, l2));
    const EpsilonCheck check = verify_epsilon_ne(gn, sol.row_strategy, sol.col_strategy, 1.0);
    sol.f_row = check.f_row;
    sol.f_col = check.f_col;
    return sol;
  }

  auto [c1, c2] = min_max_constants(gr);
  sol.reduction.c1 = c1;
  sol.reduction.c2 = c2;

  const SymmetricGame sym = symmetrize(gr);
  const std::size_t n_sym = sym.n();

  // A disconnected symmetrization splits into independent subgames; any
  // component containing both players' strategies carries an equilibrium.
  std::vector<Component> components = decompose(sym);
  const Component* chosen = nullptr;
  for (const Component& comp : components) {
    bool has_col = false, has_row = false;
    for (std::size_t node : comp.nodes) {
      if (node < k2)
        has_col = true;
      else
        has_row = true;
    }
    if (has_col && has_row) {
      chosen = &comp;
      break;
    }
  }
  Component whole;
  if (chosen == nullptr) {
    whole.nodes.resize(n_sym);
    for (std::size_t i = 0; i < n_sym; ++i) whole.nodes[i] = i;
    whole.game = sym;
    chosen = &whole;
  }
  const std::size_t n_comp = chosen->game.n();

  const Spectrum spectrum = eig_sym(symmetric_sum(chosen->game.A));
  sol.xi = spectrum.xi;
  sol.positive_count = spectrum.positive_count;
  sol.eigenvalues = spectrum.eigenvalues;

  const SearchPlan plan = make_plan(epsilon, n_comp, opts.cap, opts.mode, opts.seed);
  SearchOutcome outcome = multi_start_search(chosen->game, spectrum, plan, opts.descent);

  // Candidate symmetric points: every stationary point found plus its dual,
  // best regret first.
  struct Candidate {
    Vec point;  // in component coordinates
    double f;
  };
  std::vector<Candidate> candidates;
  for (const RegionRecord& record : outcome.regions) {
    if (record.failed) continue;
    candidates.push_back({record.result.x_star.vec(), record.result.f_x});
    candidates.push_back({record.result.w_star.vec(), record.result.f_w});
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.f < b.f; });

  ExtractedStrategies extracted;
  bool have_extraction = false;
  double chosen_f = 0.0;
  for (const Candidate& cand : candidates) {
    const Vec lifted = lift(cand.point, chosen->nodes, n_sym);
    try {
      extracted = extract_strategies(ProbVector::cleaned(lifted), gr);
      chosen_f = regret(sym.A, lifted);
      have_extraction = true;
      break;
    } catch (const ZeroBlock&) {
      continue;
    }
  }
  if (!have_extraction) {
    // No candidate touches both blocks; nudge the best one onto both.
    Vec lifted = lift(candidates.front().point, chosen->nodes, n_sym);
    const double tau = 1e-8;
    for (std::size_t j = 0; j < k2; ++j)
      lifted[j] = (1.0 - tau) * lifted[j] + tau * 0.5 / static_cast<double>(k2);
    for (std::size_t i = 0; i < k1; ++i)
      lifted[k2 + i] = (1.0 - tau) * lifted[k2 + i] + tau * 0.5 / static_cast<double>(k1);
    const ProbVector nudged = ProbVector::cleaned(std::move(lifted));
    extracted = extract_strategies(nudged, gr);
    chosen_f = regret(sym.A, nudged.vec());
  }

  sol.f_sym_best = chosen_f;
  sol.f_sym_rebalanced = regret(sym.A, extracted.rebalanced.vec());
  sol.transfer_bound = regret_transfer_bound(sol.f_sym_rebalanced, c1, c2);
  sol.f_row = extracted.f_row;
  sol.f_col = extracted.f_col;
  sol.row_strategy = ProbVector::cleaned(lift(extracted.row_strategy.vec(), red.kept_rows, l1));
  sol.col_strategy = ProbVector::cleaned(lift(extracted.col_strategy.vec(), red.kept_cols, l2));

  if (outcome.best.converged) {
    sol.certificate = certify_stationarity(chosen->game.A, outcome.best,
                                           opts.certificate_samples, opts.seed);
  }
  sol.search = std::move(outcome);
  return sol;
}

SymmetricSolution solve_symmetric(const SymmetricGame& g, double epsilon,
                                  const SolveOptions& opts) {
  const std::size_t n = g.n();
  std::vector<Component> components = decompose(g);
  const Component& comp = components.front();

  SymmetricSolution sol;
  sol.component_nodes = comp.nodes;
  const Spectrum spectrum = eig_sym(symmetric_sum(comp.game.A));
  sol.eigenvalues = spectrum.eigenvalues;
  sol.positive_count = spectrum.positive_count;
  sol.xi = spectrum.xi;

  const SearchPlan plan = make_plan(epsilon, comp.game.n(), opts.cap, opts.mode, opts.seed);
  SearchOutcome outcome = multi_start_search(comp.game, spectrum, plan, opts.descent);

  sol.x = ProbVector::cleaned(lift(outcome.best.x_star.vec(), comp.nodes, n));
  sol.w = ProbVector::cleaned(lift(outcome.best.w_star.vec(), comp.nodes, n));
  sol.f_x = regret(g.A, sol.x.vec());
  sol.f_w = regret(g.A, sol.w.vec());
  if (outcome.best.converged) {
    sol.certificate =
        certify_stationarity(comp.game.A, outcome.best, opts.certificate_samples, opts.seed);
  }
  sol.search = std::move(outcome);
  return sol;
}

}  // namespace sgnash

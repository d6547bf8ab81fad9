#include "sgnash/report.hpp"

#include <chrono>
#include <cmath>

#include "json.hpp"
#include "sgnash/descent.hpp"
#include "sgnash/errors.hpp"
#include "sgnash/graph.hpp"
#include "sgnash/spectral.hpp"

namespace sgnash {

namespace {

using json = nlohmann::ordered_json;

json vec_json(const Vec& v) { return json(v); }

json strategy_json(const ProbVector& p) { return json(p.vec()); }

json certificate_json(const CertificateReport& cert) {
  json out = json::object();
  const char* names[] = {"stationarity_max_form",  "stationarity_dual_form",
                         "quadratic_growth",       "dual_distance_bound",
                         "dual_payoff_bound",      "one_third_bound",
                         "dual_support_containment", "stationarity_lp_min"};
  for (const char* name : names) {
    bool failed = false;
    for (const auto& v : cert.violations)
      if (v.inequality == name) failed = true;
    out[name] = failed ? "fail" : "pass";
  }
  out["checks_run"] = cert.checks;
  out["violations"] = cert.violations.size();
  return out;
}

bool all_pass(const json& certificates) {
  for (const auto& [key, value] : certificates.items()) {
    if (value.is_string() && value.get<std::string>() == "fail") return false;
  }
  return true;
}

bool is_binary_matrix(const Matrix& a) {
  for (double x : a.data())
    if (x != 0.0 && x != 1.0) return false;
  return true;
}

Matrix undirected_sum(const Matrix& a) {
  Matrix s(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = a(i, j) + a(j, i);
  return s;
}

std::size_t count_ones(const Matrix& a) {
  std::size_t ones = 0;
  for (double x : a.data())
    if (x == 1.0) ++ones;
  return ones;
}

json planner_json(const PlannerReport& p) {
  json out = json::object();
  out["epsilon"] = p.epsilon;
  out["spectral_exponent"] = p.spectral_exponent;
  out["sqrt_m_exponent"] = p.sqrt_m_exponent;
  out["baseline_exponent"] = p.baseline_exponent;
  out["crossover_n"] = p.crossover_n;
  return out;
}

json timings_json(bool include, double seconds) {
  json out = json::object();
  out["included"] = include;
  out["total_seconds"] = include ? seconds : 0.0;
  return out;
}

SymmetricGame game_from_matrix(const Matrix& a) {
  SymmetricGame g;
  g.A = a;
  return g;
}

}  // namespace

ReportOutcome solve_report(const GameFile& game, const ReportOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  json doc = json::object();
  json certificates = json::object();

  SolveOptions solve_opts;
  solve_opts.cap = opts.cap;
  solve_opts.mode = opts.mode;
  solve_opts.seed = opts.seed;

  if (game.kind == GameFile::Kind::Bimatrix) {
    const BimatrixGame& g = game.bimatrix;
    doc["input"] = {{"kind", "bimatrix"}, {"rows", g.num_rows()}, {"cols", g.num_cols()}};

    const BimatrixSolution sol = solve_bimatrix(g, opts.epsilon, solve_opts);

    json reduction = json::object();
    reduction["removed_rows"] = sol.reduction.removed_rows;
    reduction["removed_cols"] = sol.reduction.removed_cols;
    reduction["c1"] = sol.reduction.c1;
    reduction["c2"] = sol.reduction.c2;
    if (!sol.trivial_reason.empty()) reduction["trivial_case"] = sol.trivial_reason;
    doc["reduction"] = reduction;

    json spectrum = json::object();
    spectrum["eigenvalues"] = vec_json(sol.eigenvalues);
    spectrum["positive_count"] = sol.positive_count;
    spectrum["xi"] = sol.xi;
    doc["spectrum"] = spectrum;

    json plan = json::object();
    plan["epsilon"] = opts.epsilon;
    plan["mode"] = opts.mode == SearchMode::PlainMultiStart ? "plain" : "ball";
    plan["cap"] = opts.cap;
    plan["seed"] = opts.seed;
    if (sol.search) {
      plan["regions_explored"] = sol.search->regions_explored;
      plan["truncated"] = sol.search->truncated;
      plan["guarantee"] = sol.search->guarantee;
    }
    doc["plan"] = plan;

    // Regrets recomputed from the reported strategies against the
    // normalized input, independent of what the solver recorded.
    bool degenerate = false;
    BimatrixGame gn = g;
    try {
      gn.R = normalize(g.R);
      gn.C = normalize(g.C);
    } catch (const ConstantMatrix&) {
      degenerate = true;  // constant payoffs; verify against the originals
    }
    const EpsilonCheck check =
        verify_epsilon_ne(degenerate ? g : gn, sol.row_strategy, sol.col_strategy, opts.epsilon);

    json outcome = json::object();
    outcome["row_strategy"] = strategy_json(sol.row_strategy);
    outcome["col_strategy"] = strategy_json(sol.col_strategy);
    outcome["f_row"] = sol.f_row;
    outcome["f_col"] = sol.f_col;
    outcome["f_sym_best"] = sol.f_sym_best;
    outcome["f_sym_rebalanced"] = sol.f_sym_rebalanced;
    outcome["transfer_bound"] = sol.transfer_bound;
    doc["outcome"] = outcome;

    certificates["regret_reverification"] =
        (std::fabs(check.f_row - sol.f_row) <= 1e-9 && std::fabs(check.f_col - sol.f_col) <= 1e-9)
            ? "pass"
            : "fail";
    if (sol.trivial_reason.empty()) {
      certificates["transfer_bound_holds"] =
          (sol.f_row + sol.f_col <= sol.transfer_bound + 1e-9) ? "pass" : "fail";
      certificates["rebalanced_no_worse"] =
          (sol.f_sym_rebalanced <= sol.f_sym_best + 1e-12) ? "pass" : "fail";
    } else {
      certificates["trivial_zero_regret"] =
          (sol.f_row <= 1e-9 && sol.f_col <= 1e-9) ? "pass" : "fail";
    }
    if (sol.certificate) {
      const json cert = certificate_json(*sol.certificate);
      for (const auto& [key, value] : cert.items())
        certificates[std::string("stationary_") + key] = value;
    }
  } else {
    Matrix a = game.symmetric;
    doc["input"] = {{"kind", "symmetric"}, {"n", a.rows()}};
    const double lo = min_entry(a.data());
    const double hi = max_entry(a.data());
    bool renormalized = false;
    if (lo < 0.0 || hi > 1.0) {
      a = normalize(a);
      renormalized = true;
    }
    doc["input"]["renormalized"] = renormalized;

    SymmetricGame g = game_from_matrix(a);
    json validation = json::array();
    if (is_binary_matrix(a)) {
      for (const auto& v : validate_winlose(g)) validation.push_back(v.detail);
    }
    doc["validation"] = validation;

    const SymmetricSolution sol = solve_symmetric(g, opts.epsilon, solve_opts);

    json spectrum = json::object();
    spectrum["eigenvalues"] = vec_json(sol.eigenvalues);
    spectrum["positive_count"] = sol.positive_count;
    spectrum["xi"] = sol.xi;
    doc["spectrum"] = spectrum;

    json plan = json::object();
    plan["epsilon"] = opts.epsilon;
    plan["mode"] = opts.mode == SearchMode::PlainMultiStart ? "plain" : "ball";
    plan["cap"] = opts.cap;
    plan["seed"] = opts.seed;
    plan["regions_explored"] = sol.search.regions_explored;
    plan["truncated"] = sol.search.truncated;
    plan["guarantee"] = sol.search.guarantee;
    plan["component_size"] = sol.component_nodes.size();
    doc["plan"] = plan;

    json outcome = json::object();
    outcome["x"] = strategy_json(sol.x);
    outcome["f_x"] = sol.f_x;
    outcome["w"] = strategy_json(sol.w);
    outcome["f_w"] = sol.f_w;
    doc["outcome"] = outcome;

    certificates["regret_reverification"] =
        std::fabs(regret(g, sol.x) - sol.f_x) <= 1e-12 ? "pass" : "fail";
    if (sol.certificate) {
      const json cert = certificate_json(*sol.certificate);
      for (const auto& [key, value] : cert.items())
        certificates[std::string("stationary_") + key] = value;
    }
  }

  doc["certificates"] = certificates;
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  doc["timings"] = timings_json(opts.include_timings, seconds);

  ReportOutcome out;
  out.certificates_ok = all_pass(certificates);
  out.text = doc.dump(2) + "\n";
  return out;
}

ReportOutcome spectrum_report(const GameFile& game, const ReportOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  json doc = json::object();

  Matrix a;
  if (game.kind == GameFile::Kind::Bimatrix) {
    BimatrixGame gn = game.bimatrix;
    gn.R = normalize(gn.R);
    gn.C = normalize(gn.C);
    a = symmetrize(gn).A;
    doc["input"] = {{"kind", "bimatrix"},
                    {"rows", game.bimatrix.num_rows()},
                    {"cols", game.bimatrix.num_cols()},
                    {"symmetrized_n", a.rows()}};
  } else {
    a = game.symmetric;
    doc["input"] = {{"kind", "symmetric"}, {"n", a.rows()}};
  }

  const SymmetricGame g = game_from_matrix(a);
  const Spectrum s = eig_sym(undirected_sum(a));

  json spectrum = json::object();
  spectrum["eigenvalues"] = vec_json(s.eigenvalues);
  spectrum["positive_count"] = s.positive_count;
  spectrum["xi"] = s.xi;
  doc["spectrum"] = spectrum;

  json certificates = json::object();
  const bool binary = is_binary_matrix(a);
  doc["winlose"] = binary;
  if (binary) {
    const auto violations = validate_winlose(g);
    json validation = json::array();
    bool simple_graph = true;  // no self-loops, no antiparallel pairs
    for (const auto& v : violations) {
      validation.push_back(v.detail);
      if (v.property == WinLoseProperty::ZeroDiagonal ||
          v.property == WinLoseProperty::NoAntiparallelEdges)
        simple_graph = false;
    }
    doc["validation"] = validation;

    const InducedGraph graph = induced_graph(g);
    if (simple_graph) {
      // The trace identity sum lambda^2 = 2|E| needs a genuine simple-graph
      // adjacency, which the two properties above guarantee.
      const SpectralSumCheck sum_check = spectral_sum_bound_check(s, count_ones(a));
      json sq = json::object();
      sq["xi"] = sum_check.xi;
      sq["sqrt_m"] = sum_check.sqrt_m;
      sq["sum_sq"] = sum_check.sum_sq;
      sq["expected_sum_sq"] = sum_check.expected_sum_sq;
      sq["failures"] = sum_check.failures;
      doc["sqrt_m_check"] = sq;
      certificates["sqrt_m_bound"] = sum_check.ok ? "pass" : "fail";
    }

    const BipartiteResult bip = is_bipartite(graph, &s);
    json bj = json::object();
    bj["bipartite"] = bip.bipartite;
    if (bip.bipartite) bj["spectrum_symmetric"] = bip.spectrum_symmetric;
    doc["bipartite"] = bj;
    if (bip.bipartite)
      certificates["bipartite_spectrum_symmetric"] = bip.spectrum_symmetric ? "pass" : "fail";

    json comps = json::array();
    for (const Component& comp : decompose(g)) {
      json cj = json::object();
      cj["nodes"] = comp.nodes;
      const InducedGraph cg = induced_graph(comp.game);
      const Spectrum cs = eig_sym(undirected_sum(comp.game.A));
      const PerronReport perron = perron_check(cg, cs);
      cj["perron_ok"] = perron.ok;
      cj["lambda1"] = perron.lambda1;
      cj["failures"] = perron.failures;
      comps.push_back(cj);
      if (!perron.ok) certificates["perron"] = "fail";
    }
    if (!certificates.contains("perron")) certificates["perron"] = "pass";
    doc["components"] = comps;
  } else {
    certificates["spectrum_computed"] = "pass";
  }

  doc["certificates"] = certificates;
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  doc["timings"] = timings_json(opts.include_timings, seconds);

  ReportOutcome out;
  out.certificates_ok = all_pass(certificates);
  out.text = doc.dump(2) + "\n";
  return out;
}

ReportOutcome compare_report(const GameFile& game, const CompareOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  json doc = json::object();
  json certificates = json::object();

  SolveOptions solve_opts;
  solve_opts.cap = opts.cap;
  solve_opts.mode = opts.mode;
  solve_opts.seed = opts.seed;

  double xi = 0.0;
  std::size_t positive_count = 0;
  std::size_t n_for_planner = 0;

  if (game.kind == GameFile::Kind::Bimatrix) {
    const BimatrixGame& g = game.bimatrix;
    doc["input"] = {{"kind", "bimatrix"}, {"rows", g.num_rows()}, {"cols", g.num_cols()}};

    const auto ts0 = std::chrono::steady_clock::now();
    const BimatrixSolution sol = solve_bimatrix(g, opts.epsilon, solve_opts);
    const double spectral_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - ts0).count();
    xi = sol.xi;
    positive_count = sol.positive_count;
    n_for_planner = g.num_rows() + g.num_cols();

    json spectral = json::object();
    spectral["f_row"] = sol.f_row;
    spectral["f_col"] = sol.f_col;
    spectral["regions"] = sol.search ? sol.search->regions_explored : 0;
    if (opts.include_timings) spectral["seconds"] = spectral_seconds;
    doc["grid_spectral"] = spectral;

    BimatrixGame gn = g;
    try {
      gn.R = normalize(g.R);
      gn.C = normalize(g.C);
    } catch (const ConstantMatrix&) {
      gn = g;
    }
    const auto tl0 = std::chrono::steady_clock::now();
    const LmmResult lmm = lmm_support_search(gn, opts.lmm_k, opts.cap);
    const double lmm_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - tl0).count();
    json baseline = json::object();
    baseline["k"] = opts.lmm_k;
    baseline["f_row"] = lmm.f_row;
    baseline["f_col"] = lmm.f_col;
    baseline["enumerated"] = lmm.enumerated;
    baseline["truncated"] = lmm.truncated;
    if (opts.include_timings) baseline["seconds"] = lmm_seconds;
    doc["lmm_baseline"] = baseline;

    if (g.num_rows() + g.num_cols() <= 10 && sol.trivial_reason.empty()) {
      DominanceReduction red = remove_dominated(gn);
      const OracleResult oracle = exact_symmetric_ne(symmetrize(red.game));
      doc["oracle"] = {{"symmetric_equilibria", oracle.equilibria.size()},
                       {"exhaustive", oracle.exhaustive}};
    }
  } else {
    Matrix a = game.symmetric;
    doc["input"] = {{"kind", "symmetric"}, {"n", a.rows()}};
    const double lo = min_entry(a.data());
    const double hi = max_entry(a.data());
    if (lo < 0.0 || hi > 1.0) a = normalize(a);
    SymmetricGame g = game_from_matrix(a);
    n_for_planner = a.rows();

    const auto ts0 = std::chrono::steady_clock::now();
    const SymmetricSolution sol = solve_symmetric(g, opts.epsilon, solve_opts);
    const double spectral_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - ts0).count();
    xi = sol.xi;
    positive_count = sol.positive_count;

    json spectral = json::object();
    spectral["f_x"] = sol.f_x;
    spectral["f_w"] = sol.f_w;
    spectral["regions"] = sol.search.regions_explored;
    if (opts.include_timings) spectral["seconds"] = spectral_seconds;
    doc["grid_spectral"] = spectral;

    // Baseline runs on the bimatrix view (A, A^T).
    BimatrixGame bim;
    bim.R = a;
    bim.C = a.transposed();
    const auto tl0 = std::chrono::steady_clock::now();
    const LmmResult lmm = lmm_support_search(bim, opts.lmm_k, opts.cap);
    const double lmm_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - tl0).count();
    json baseline = json::object();
    baseline["k"] = opts.lmm_k;
    baseline["f_row"] = lmm.f_row;
    baseline["f_col"] = lmm.f_col;
    baseline["enumerated"] = lmm.enumerated;
    baseline["truncated"] = lmm.truncated;
    if (opts.include_timings) baseline["seconds"] = lmm_seconds;
    doc["lmm_baseline"] = baseline;

    if (a.rows() <= 10) {
      const OracleResult oracle = exact_symmetric_ne(g);
      doc["oracle"] = {{"symmetric_equilibria", oracle.equilibria.size()},
                       {"exhaustive", oracle.exhaustive}};
    }
  }

  if (opts.epsilon < 1.0) {
    doc["planner"] = planner_json(planner_values(n_for_planner, xi, positive_count, opts.epsilon));
  }
  certificates["compare_complete"] = "pass";
  doc["certificates"] = certificates;
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  doc["timings"] = timings_json(opts.include_timings, seconds);

  ReportOutcome out;
  out.certificates_ok = all_pass(certificates);
  out.text = doc.dump(2) + "\n";
  return out;
}

}  // namespace sgnash

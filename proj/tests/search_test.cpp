#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "sgnash/core.hpp"
#include "sgnash/errors.hpp"
#include "sgnash/generator.hpp"
#include "sgnash/oracle.hpp"
#include "sgnash/rng.hpp"
#include "sgnash/search.hpp"
#include "sgnash/spectral.hpp"

using namespace sgnash;

namespace {

SymmetricGame game_from(const Matrix& a) {
  SymmetricGame g;
  g.A = a;
  return g;
}

Matrix rps() {
  Matrix a(3, 3, 0.0);
  a(0, 1) = 1.0;
  a(1, 2) = 1.0;
  a(2, 0) = 1.0;
  return a;
}

Matrix undirected_sum(const Matrix& a) {
  Matrix s(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = a(i, j) + a(j, i);
  return s;
}

BimatrixGame matching_pennies() {
  BimatrixGame g;
  g.R = Matrix(2, 2, 0.0);
  g.R(0, 0) = 1.0;
  g.R(1, 1) = 1.0;
  g.C = Matrix(2, 2, 0.0);
  g.C(0, 1) = 1.0;
  g.C(1, 0) = 1.0;
  return g;
}

}  // namespace

TEST_CASE("support enumeration order and counts") {
  const SupportEnumeration en = enumerate_supports(3, 2, 1000);
  REQUIRE(en.supports.size() == 6);
  CHECK(en.supports[0] == std::vector<std::size_t>{0});
  CHECK(en.supports[1] == std::vector<std::size_t>{1});
  CHECK(en.supports[2] == std::vector<std::size_t>{2});
  CHECK(en.supports[3] == std::vector<std::size_t>{0, 1});
  CHECK(en.supports[4] == std::vector<std::size_t>{0, 2});
  CHECK(en.supports[5] == std::vector<std::size_t>{1, 2});
  CHECK(static_cast<double>(en.supports.size()) <= std::pow(3.0, 2.0));
  CHECK_FALSE(en.truncated);

  CHECK(enumerate_supports(4, 1, 1000).supports.size() == 4);
  CHECK(enumerate_supports(5, 2, 3).truncated);
}

TEST_CASE("region starts are uniform over the support") {
  const ProbVector single = region_start({1}, 3);
  CHECK(single[1] == doctest::Approx(1.0));
  const ProbVector pair = region_start({0, 2}, 3);
  CHECK(pair[0] == doctest::Approx(0.5));
  CHECK(pair[1] == doctest::Approx(0.0));
  CHECK(pair[2] == doctest::Approx(0.5));
  const ProbVector full = region_start({0, 1, 2}, 3);
  CHECK(full[0] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("multi-start finds the cycle equilibrium and selects correctly") {
  const SymmetricGame g = game_from(rps());
  const Spectrum s = eig_sym(undirected_sum(g.A));
  const SearchPlan plan = make_plan(0.5, 3);
  const SearchOutcome outcome = multi_start_search(g, s, plan);
  CHECK(outcome.best.f_x <= 1e-8);
  CHECK(outcome.regions_explored == 6);
  double best = 1e9;
  for (const auto& record : outcome.regions)
    if (!record.failed) best = std::min(best, record.result.f_x);
  CHECK(outcome.best.f_x == doctest::Approx(best));
}

TEST_CASE("multi-start is deterministic and monotone in its budget") {
  SplitMix64 rng(1122);
  Matrix a;
  for (int k = 0; k < 50; ++k) {
    try {
      a = generate_winlose(7, 0.5, rng.next());
      break;
    } catch (const GenerationFailure&) {
    }
  }
  const SymmetricGame g = game_from(a);
  const Spectrum s = eig_sym(undirected_sum(a));

  const SearchOutcome first = multi_start_search(g, s, make_plan(0.5, 7));
  const SearchOutcome second = multi_start_search(g, s, make_plan(0.5, 7));
  REQUIRE(first.regions.size() == second.regions.size());
  for (std::size_t i = 0; i < first.regions.size(); ++i) {
    REQUIRE(first.regions[i].result.x_star.size() == second.regions[i].result.x_star.size());
    for (std::size_t j = 0; j < first.regions[i].result.x_star.size(); ++j)
      CHECK(first.regions[i].result.x_star[j] == second.regions[i].result.x_star[j]);
  }

  const SearchOutcome small = multi_start_search(g, s, make_plan(0.5, 7, 4));
  CHECK(small.truncated);
  CHECK(first.best.f_x <= small.best.f_x + 1e-15);
}

TEST_CASE("plan validation") {
  CHECK_THROWS_AS(make_plan(0.4, 5), Error);
  CHECK_THROWS_AS(make_plan(0.0, 5), Error);
  const SearchPlan plan = make_plan(1.0 / 3.0, 10);
  CHECK(plan.support_size == 3);
  CHECK(plan.region_count_bound == doctest::Approx(1000.0));
  CHECK(make_plan(0.25, 3).support_size == 3);  // clamped to n
}

TEST_CASE("planner reproduces the crossover thresholds") {
  const Spectrum s = eig_sym(undirected_sum(rps()));
  const PlannerReport third = planner(100, s, 1.0 / 3.0);
  CHECK(third.crossover_n == doctest::Approx(2e5).epsilon(0.10));
  const PlannerReport fifteen = planner(100, s, 0.15);
  CHECK(fifteen.crossover_n == doctest::Approx(1.2e6).epsilon(0.10));

  const PlannerReport half = planner(3, s, 0.5);
  CHECK(half.spectral_exponent == doctest::Approx((2.0 / 3.0) / 0.5));
  CHECK(half.sqrt_m_exponent == doctest::Approx(2.0));
  CHECK(half.baseline_exponent == doctest::Approx(12.0 * std::log(3.0) / 0.25));
}

TEST_CASE("end-to-end matching pennies") {
  const BimatrixSolution sol = solve_bimatrix(matching_pennies(), 0.5);
  CHECK(sol.f_row <= 1e-8);
  CHECK(sol.f_col <= 1e-8);
  CHECK(sol.row_strategy[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(sol.col_strategy[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(sol.reduction.c1 == doctest::Approx(0.5).epsilon(1e-9));
  const EpsilonCheck check =
      verify_epsilon_ne(matching_pennies(), sol.row_strategy, sol.col_strategy, 1e-8);
  CHECK(check.ok);
}

TEST_CASE("dominant pure pair reduces to a 1x1 game") {
  BimatrixGame g;
  g.R = Matrix(2, 2, 0.0);
  g.R(0, 0) = 1.0;
  g.C = Matrix(2, 2, 0.0);
  g.C(0, 0) = 1.0;
  const BimatrixSolution sol = solve_bimatrix(g, 0.5);
  CHECK(sol.row_strategy[0] == doctest::Approx(1.0));
  CHECK(sol.col_strategy[0] == doctest::Approx(1.0));
  CHECK(sol.f_row <= 1e-9);
  CHECK(sol.f_col <= 1e-9);
  CHECK(sol.reduction.removed_rows == std::vector<std::size_t>{1});
  CHECK(sol.reduction.removed_cols == std::vector<std::size_t>{1});
}

TEST_CASE("constant matrices take the degenerate path") {
  BimatrixGame g;
  g.R = Matrix(2, 3, 0.7);
  g.C = Matrix(2, 3, 0.0);
  g.C(0, 2) = 1.0;
  const BimatrixSolution sol = solve_bimatrix(g, 0.5);
  CHECK_FALSE(sol.trivial_reason.empty());
  CHECK(sol.f_row == 0.0);
  CHECK(sol.f_col == 0.0);
  CHECK(sol.col_strategy[2] == doctest::Approx(1.0));
}

TEST_CASE("zero column of R routes through the trivial equilibrium") {
  BimatrixGame g;
  g.R = Matrix(2, 2, 0.0);
  g.R(0, 1) = 1.0;
  g.R(1, 1) = 0.5;
  g.C = Matrix(2, 2, 0.0);
  g.C(0, 0) = 1.0;
  g.C(1, 0) = 0.5;
  const BimatrixSolution sol = solve_bimatrix(g, 0.5);
  CHECK_FALSE(sol.trivial_reason.empty());
  BimatrixGame gn;
  gn.R = normalize(g.R);
  gn.C = normalize(g.C);
  const EpsilonCheck check = verify_epsilon_ne(gn, sol.row_strategy, sol.col_strategy, 1e-9);
  CHECK(check.ok);
}

TEST_CASE("random bimatrix games respect the transfer bound end to end") {
  SplitMix64 rng(3344);
  for (int trial = 0; trial < 10; ++trial) {
    const BimatrixGame g = generate_bimatrix(4, 4, rng.next());
    const BimatrixSolution sol = solve_bimatrix(g, 0.5, SolveOptions{});
    if (!sol.trivial_reason.empty()) continue;
    CHECK(sol.f_row + sol.f_col <= sol.transfer_bound + 1e-9);
    CHECK(sol.f_sym_rebalanced <= sol.f_sym_best + 1e-12);
    BimatrixGame gn;
    gn.R = normalize(g.R);
    gn.C = normalize(g.C);
    const EpsilonCheck check = verify_epsilon_ne(gn, sol.row_strategy, sol.col_strategy, 1.0);
    CHECK(std::fabs(check.f_row - sol.f_row) <= 1e-9);
    CHECK(std::fabs(check.f_col - sol.f_col) <= 1e-9);
  }
}

TEST_CASE("symmetric solve lifts the first component of a disconnected game") {
  Matrix a(6, 6, 0.0);
  a(0, 1) = 1.0;
  a(1, 2) = 1.0;
  a(2, 0) = 1.0;
  a(3, 4) = 1.0;
  a(4, 5) = 1.0;
  a(5, 3) = 1.0;
  const SymmetricSolution sol = solve_symmetric(game_from(a), 0.5);
  CHECK(sol.component_nodes == std::vector<std::size_t>{0, 1, 2});
  CHECK(sol.f_x <= 1e-8);
  CHECK(sol.x[3] == 0.0);
  CHECK(sol.search.regions_explored == 6);
}

TEST_CASE("named error paths surface as the right exceptions") {
  CHECK_THROWS_AS(enumerate_supports(3, 0, 100), Error);
  CHECK_THROWS_AS(enumerate_supports(3, 4, 100), Error);
  CHECK_THROWS_AS(region_start({}, 3), Error);
  BimatrixGame mismatched;
  mismatched.R = Matrix(2, 2, 0.5);
  mismatched.C = Matrix(2, 3, 0.5);
  CHECK_THROWS_AS(solve_bimatrix(mismatched, 0.5), DimensionMismatch);
}

TEST_CASE("ball-constrained search also reaches the cycle equilibrium") {
  const SymmetricGame g = game_from(rps());
  const Spectrum s = eig_sym(undirected_sum(g.A));
  const SearchPlan plan = make_plan(0.5, 3, 100000, SearchMode::BallConstrained);
  const SearchOutcome outcome = multi_start_search(g, s, plan);
  CHECK(outcome.guarantee == doctest::Approx(0.5 * 2.0 / 3.0));
  CHECK(outcome.best.f_x <= outcome.guarantee + 1e-9);
}

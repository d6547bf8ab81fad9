#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "sgnash/core.hpp"
#include "sgnash/errors.hpp"
#include "sgnash/oracle.hpp"
#include "sgnash/rng.hpp"

using namespace sgnash;

namespace {

Matrix from_rows(const std::vector<Vec>& rows) {
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[0].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

Matrix rps() { return from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}); }

BimatrixGame matching_pennies() {
  BimatrixGame g;
  g.R = from_rows({{1, 0}, {0, 1}});
  g.C = from_rows({{0, 1}, {1, 0}});
  return g;
}

}  // namespace

TEST_CASE("normalize maps affinely onto [0,1]") {
  const Matrix m = normalize(from_rows({{2, 5}, {3, 4}}));
  CHECK(m(0, 0) == doctest::Approx(0.0));
  CHECK(m(0, 1) == doctest::Approx(1.0));
  CHECK(m(1, 0) == doctest::Approx(1.0 / 3.0));
  CHECK(m(1, 1) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("normalize is the identity on an already normalized matrix") {
  const Matrix m = normalize(from_rows({{0, 1}, {1, 0}}));
  CHECK(m(0, 0) == 0.0);
  CHECK(m(0, 1) == 1.0);
}

TEST_CASE("normalize rejects constant matrices") {
  CHECK_THROWS_AS(normalize(from_rows({{7, 7}, {7, 7}})), ConstantMatrix);
}

TEST_CASE("normalize is idempotent and order preserving") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix m(3, 4);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = rng.next_double() * 10.0 - 5.0;
    const Matrix once = normalize(m);
    const Matrix twice = normalize(once);
    CHECK(max_abs_diff(once, twice) <= 1e-12);
    for (std::size_t i = 0; i < 12; ++i)
      for (std::size_t j = 0; j < 12; ++j) {
        const bool before = m.data()[i] < m.data()[j];
        if (before) CHECK(once.data()[i] <= once.data()[j] + 1e-12);
      }
  }
}

TEST_CASE("entrywise-dominated row is removed") {
  BimatrixGame g;
  g.R = from_rows({{1, 1}, {0, 0}});
  g.C = from_rows({{1, 0}, {0, 1}});
  const DominanceReduction red = remove_dominated(g);
  REQUIRE(red.removed_rows.size() == 1);
  CHECK(red.removed_rows[0] == 1);
  CHECK(red.game.num_rows() == 1);
}

TEST_CASE("matching pennies survives dominance removal unchanged") {
  const DominanceReduction red = remove_dominated(matching_pennies());
  CHECK(red.removed_rows.empty());
  CHECK(red.removed_cols.empty());
}

TEST_CASE("convex-combination dominated row is removed") {
  // Third row is the average of the others minus a margin; a grid oracle
  // confirms the row is never strictly best.
  BimatrixGame g;
  g.R = from_rows({{0.9, 0.2, 0.3}, {0.2, 0.9, 0.3}, {0.45, 0.45, 0.2}});
  g.C = Matrix::identity(3);
  bool ever_best = false;
  testoracle::for_each_grid_point(3, 100, [&](const Vec& y) {
    const Vec ry = matvec(g.R, y);
    if (ry[2] > std::max(ry[0], ry[1]) + 1e-12) ever_best = true;
  });
  CHECK_FALSE(ever_best);
  const DominanceReduction red = remove_dominated(g);
  REQUIRE(red.removed_rows.size() == 1);
  CHECK(red.removed_rows[0] == 2);
}

TEST_CASE("dominance removal never strips a sampled strict best response") {
  SplitMix64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    BimatrixGame g;
    g.R = Matrix(4, 4);
    g.C = Matrix(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        g.R(i, j) = rng.next_double();
        g.C(i, j) = rng.next_double();
      }
    const DominanceReduction red = remove_dominated(g);
    // Sample within the surviving column space: rows strictly best against
    // some such strategy must have survived as well.
    for (int sample = 0; sample < 50; ++sample) {
      const ProbVector reduced_y = random_simplex_point(rng, red.kept_cols.size());
      Vec y(4, 0.0);
      for (std::size_t j = 0; j < red.kept_cols.size(); ++j) y[red.kept_cols[j]] = reduced_y[j];
      const Vec ry = matvec(g.R, y);
      std::size_t best = 0;
      for (std::size_t i = 1; i < 4; ++i)
        if (ry[i] > ry[best]) best = i;
      bool unique = true;
      for (std::size_t i = 0; i < 4; ++i)
        if (i != best && ry[i] >= ry[best] - 1e-9) unique = false;
      if (unique)
        CHECK(std::find(red.removed_rows.begin(), red.removed_rows.end(), best) ==
              red.removed_rows.end());
    }
  }
}

TEST_CASE("zero column of R yields a trivial equilibrium") {
  BimatrixGame g;
  g.R = from_rows({{0, 1}, {0, 1}});
  g.C = from_rows({{1, 0}, {1, 0}});
  const auto eq = trivial_zero_check(g);
  REQUIRE(eq.has_value());
  CHECK(eq->col_strategy[0] == doctest::Approx(1.0));
  const EpsilonCheck check = verify_epsilon_ne(g, eq->row_strategy, eq->col_strategy, 0.0);
  CHECK(check.ok);
  CHECK(check.f_col == doctest::Approx(0.0));
}

TEST_CASE("games without zero lines have no trivial equilibrium") {
  CHECK_FALSE(trivial_zero_check(matching_pennies()).has_value());
  BimatrixGame tiny;
  tiny.R = from_rows({{1}});
  tiny.C = from_rows({{1}});
  CHECK_FALSE(trivial_zero_check(tiny).has_value());
}

TEST_CASE("min-max constants of the classic examples") {
  const auto [c1, c2] = min_max_constants(matching_pennies());
  CHECK(c1 == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(c2 == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(testoracle::zero_sum_value_grid(matching_pennies().R, 2000) ==
        doctest::Approx(0.5).epsilon(1e-3));

  BimatrixGame ones;
  ones.R = Matrix(2, 2, 1.0);
  ones.C = matching_pennies().C;
  CHECK(min_max_constants(ones).first == doctest::Approx(1.0));
}

TEST_CASE("symmetrize builds the block matrix") {
  const SymmetricGame s = symmetrize(matching_pennies());
  REQUIRE(s.n() == 4);
  // Upper right block is C^T, lower left is R, diagonal blocks vanish.
  CHECK(s.A(0, 2) == 0.0);
  CHECK(s.A(0, 3) == 1.0);
  CHECK(s.A(1, 2) == 1.0);
  CHECK(s.A(1, 3) == 0.0);
  CHECK(s.A(2, 0) == 1.0);
  CHECK(s.A(2, 1) == 0.0);
  CHECK(s.A(3, 0) == 0.0);
  CHECK(s.A(3, 1) == 1.0);
  for (std::size_t i = 0; i < 4; ++i) CHECK(s.A(i, i) == 0.0);
  CHECK(s.A(0, 1) == 0.0);
  CHECK(s.A(2, 3) == 0.0);

  BimatrixGame wide;
  wide.R = from_rows({{1, 0}});
  wide.C = from_rows({{0, 1}});
  CHECK(symmetrize(wide).n() == 3);
}

TEST_CASE("regret of the rock-paper-scissors cycle") {
  const Matrix a = rps();
  CHECK(regret(a, {1.0 / 3, 1.0 / 3, 1.0 / 3}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(regret(a, {1.0, 0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(testoracle::regret_direct(a, {1.0, 0.0, 0.0}) == doctest::Approx(1.0));

  const Matrix four = from_rows({{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}});
  CHECK(regret(four, Vec(4, 0.25)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("block-uniform points of symmetrized 2x2 games hit their hand values") {
  // Matching pennies: every row of A x is 1/4 at the quarter-uniform point
  // and x^T A x = 1/4, so the regret vanishes.
  const SymmetricGame mp = symmetrize(matching_pennies());
  CHECK(regret(mp.A, Vec(4, 0.25)) == doctest::Approx(0.0).epsilon(1e-12));

  BimatrixGame unit;
  unit.R = Matrix(1, 1, 1.0);
  unit.C = Matrix(1, 1, 1.0);
  const SymmetricGame su = symmetrize(unit);
  CHECK(regret(su.A, Vec(2, 0.5)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("regret stays within [0, max entry]") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.next_below(6);
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.next_double();
    const ProbVector x = random_simplex_point(rng, n);
    const double f = regret(a, x.vec());
    CHECK(f >= -1e-12);
    CHECK(f <= max_entry(a.data()) + 1e-12);
  }
}

TEST_CASE("extract_strategies splits and rebalances") {
  const BimatrixGame g = matching_pennies();
  const ProbVector x = ProbVector::uniform(4);
  const ExtractedStrategies ex = extract_strategies(x, g);
  CHECK(ex.col_strategy[0] == doctest::Approx(0.5));
  CHECK(ex.row_strategy[0] == doctest::Approx(0.5));
  CHECK(ex.m1 == doctest::Approx(0.5));
  CHECK(ex.m2 == doctest::Approx(0.5));
  CHECK(ex.f_row == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ex.f_col == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("extract_strategies rejects a zero block") {
  const BimatrixGame g = matching_pennies();
  CHECK_THROWS_AS(extract_strategies(ProbVector({0.0, 0.0, 0.5, 0.5}), g), ZeroBlock);
}

TEST_CASE("rebalanced point never has worse symmetric regret") {
  SplitMix64 rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    BimatrixGame g;
    g.R = Matrix(3, 3);
    g.C = Matrix(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        g.R(i, j) = rng.next_double();
        g.C(i, j) = rng.next_double();
      }
    const SymmetricGame s = symmetrize(g);
    const ProbVector x = random_simplex_point(rng, 6);
    ExtractedStrategies ex;
    try {
      ex = extract_strategies(x, g);
    } catch (const ZeroBlock&) {
      continue;
    }
    CHECK(regret(s.A, ex.rebalanced.vec()) <= regret(s.A, x.vec()) + 1e-12);
  }
}

TEST_CASE("transfer bound arithmetic") {
  CHECK(regret_transfer_bound(0.01, 0.5, 0.5) == doctest::Approx(0.08));
  CHECK(regret_transfer_bound(0.0, 0.3, 0.9) == doctest::Approx(0.0));
  CHECK(regret_transfer_bound(0.02, 1.0, 1.0) == doctest::Approx(0.08));
  CHECK_THROWS_AS(regret_transfer_bound(0.1, 0.0, 1.0), NonPositiveConstant);
}

TEST_CASE("summed bimatrix regrets obey the transfer bound") {
  SplitMix64 rng(321);
  int exercised = 0;
  for (int trial = 0; trial < 300 && exercised < 50; ++trial) {
    BimatrixGame g;
    g.R = Matrix(2, 2);
    g.C = Matrix(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        g.R(i, j) = rng.next_double();
        g.C(i, j) = rng.next_double();
      }
    try {
      g.R = normalize(g.R);
      g.C = normalize(g.C);
    } catch (const ConstantMatrix&) {
      continue;
    }
    const DominanceReduction red = remove_dominated(g);
    const auto [c1, c2] = min_max_constants(red.game);
    if (c1 <= 0.0 || c2 <= 0.0) continue;
    const SymmetricGame s = symmetrize(red.game);
    const ProbVector x = random_simplex_point(rng, s.n());
    ExtractedStrategies ex;
    try {
      ex = extract_strategies(x, red.game);
    } catch (const ZeroBlock&) {
      continue;
    }
    const double f1 = regret(s.A, ex.rebalanced.vec());
    if (f1 >= 0.5 * std::min(c1, c2)) continue;  // bound only binds near equilibria
    CHECK(ex.f_row + ex.f_col <= regret_transfer_bound(f1, c1, c2) + 1e-9);
    ++exercised;
  }
  CHECK(exercised > 0);
}

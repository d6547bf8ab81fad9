#pragma once

// Brute-force reference implementations for the test suites. Everything in
// here is deliberately independent of the library's solver paths: plain
// grids, finite differences and direct evaluation only.

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "sgnash/matrix.hpp"

namespace testoracle {

// Visits every grid point of the k-simplex with the given number of steps
// (all compositions of `steps` into k parts, scaled down).
inline void for_each_grid_point(std::size_t k, std::size_t steps,
                                const std::function<void(const sgnash::Vec&)>& visit) {
  std::vector<std::size_t> comp(k, 0);
  comp[0] = steps;
  sgnash::Vec x(k, 0.0);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) x[i] = static_cast<double>(comp[i]) / steps;
    visit(x);
    std::size_t idx = k;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      if (comp[i] > 0) {
        idx = i;
        break;
      }
    }
    if (idx == k) break;
    const std::size_t moved = comp[idx];
    comp[idx] = 0;
    comp[idx + 1] += 1;
    comp[0] = moved - 1;
  }
}

inline double regret_direct(const sgnash::Matrix& a, const sgnash::Vec& x) {
  const sgnash::Vec ax = sgnash::matvec(a, x);
  double best = ax[0], achieved = 0.0;
  for (double v : ax) best = std::max(best, v);
  for (std::size_t i = 0; i < x.size(); ++i) achieved += x[i] * ax[i];
  return best - achieved;
}

// min over a fine grid of u of max_i (M u)_i.
inline double zero_sum_value_grid(const sgnash::Matrix& m, std::size_t steps) {
  double best = std::numeric_limits<double>::infinity();
  for_each_grid_point(m.cols(), steps, [&](const sgnash::Vec& u) {
    const sgnash::Vec mu = sgnash::matvec(m, u);
    double worst = -std::numeric_limits<double>::infinity();
    for (double v : mu) worst = std::max(worst, v);
    best = std::min(best, worst);
  });
  return best;
}

// (f((1-eps) x + eps x') - f(x)) / eps.
inline double finite_difference_derivative(const sgnash::Matrix& a, const sgnash::Vec& x,
                                           const sgnash::Vec& x_prime, double eps) {
  sgnash::Vec blend(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    blend[i] = (1.0 - eps) * x[i] + eps * x_prime[i];
  return (regret_direct(a, blend) - regret_direct(a, x)) / eps;
}

// Scan of f along the segment toward x_prime.
inline std::pair<double, double> line_scan(const sgnash::Matrix& a, const sgnash::Vec& x,
                                           const sgnash::Vec& x_prime, std::size_t steps) {
  double best_t = 0.0;
  double best_f = std::numeric_limits<double>::infinity();
  sgnash::Vec blend(x.size());
  for (std::size_t s = 0; s <= steps; ++s) {
    const double t = static_cast<double>(s) / steps;
    for (std::size_t i = 0; i < x.size(); ++i)
      blend[i] = (1.0 - t) * x[i] + t * x_prime[i];
    const double f = regret_direct(a, blend);
    if (f < best_f) {
      best_f = f;
      best_t = t;
    }
  }
  return {best_t, best_f};
}

// min over the grid of the quadratic form x^T q x with supp(x) inside the
// given support.
inline double quadratic_grid_min(const sgnash::Matrix& q, const std::vector<std::size_t>& support,
                                 std::size_t steps) {
  double best = std::numeric_limits<double>::infinity();
  for_each_grid_point(support.size(), steps, [&](const sgnash::Vec& w) {
    double val = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i)
      for (std::size_t j = 0; j < support.size(); ++j)
        val += q(support[i], support[j]) * w[i] * w[j];
    best = std::min(best, val);
  });
  return best;
}

}  // namespace testoracle

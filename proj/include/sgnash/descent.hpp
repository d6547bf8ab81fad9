#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "sgnash/core.hpp"
#include "sgnash/matrix.hpp"
#include "sgnash/prob_vector.hpp"
#include "sgnash/spectral.hpp"

namespace sgnash {

// Indices attaining max(v) within tol. Never empty.
std::vector<std::size_t> suppmax(const Vec& v, double tol);

// Directional derivative of the regret function at x toward x_prime,
// evaluated in closed form. Convex in x_prime, zero at x_prime = x.
double gradient_d(const Matrix& a, const ProbVector& x, const ProbVector& x_prime,
                  double suppmax_tol = 1e-9);

struct FullSimplex {};
struct SupportFace {
  std::vector<std::size_t> support;
};
struct SpectralBall {
  ProbVector center;
  double radius_sq = 0.0;
  Matrix a_plus;
};
using ConstraintRegion = std::variant<FullSimplex, SupportFace, SpectralBall>;

struct GradientEval {
  std::vector<std::size_t> support_max;  // suppmax(Ax) under tolerance
  double value = 0.0;                    // min over the region of the derivative
  ProbVector direction;
  ProbVector dual;                       // supported inside support_max
};

struct DescentOptions {
  double stat_tol = 1e-8;
  double suppmax_tol = 1e-9;
  std::size_t max_iter = 0;           // 0 means 10 * n^2
  std::size_t ball_iter_per_dim = 200;  // subgradient budget for ball regions
};

// Minimizes the directional derivative over the region. Over the simplex or
// a face this is an exact epigraph LP whose row duals give the associated
// dual vector; over a spectral ball it is a projected-subgradient
// approximation whose steps are only accepted after a real regret decrease.
GradientEval direction_subproblem(const Matrix& a, const ProbVector& x,
                                  const ConstraintRegion& region,
                                  const DescentOptions& opts = {});

// Exact minimization of the regret along the segment from x to x_prime.
// The best-reply envelope is piecewise linear in the step, the quadratic
// term is a parabola, so each piece minimizes in closed form.
std::pair<double, double> line_search(const Matrix& a, const ProbVector& x,
                                      const ProbVector& x_prime, double suppmax_tol = 1e-9);

struct StationaryResult {
  ProbVector x_star;
  ProbVector w_star;
  double f_x = 0.0;
  double f_w = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  Vec trace;                 // regret value per iterate, nonincreasing
  bool full_simplex = true;  // region was the whole simplex
};

StationaryResult find_stationary(const Matrix& a, const ProbVector& x0,
                                 const ConstraintRegion& region, const DescentOptions& opts = {});

struct CertificateViolation {
  std::string inequality;
  Vec witness;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct CertificateReport {
  std::vector<CertificateViolation> violations;
  std::size_t checks = 0;
  bool ok() const { return violations.empty(); }
};

// Re-verifies every stationarity property of a converged result at all
// vertices plus sampled directions: both stationarity inequalities, the
// quadratic growth form, the dual distance and payoff bounds, the 1/3
// bound on min(f(x*), f(w*)), dual support containment, and the exact LP
// minimum at x*.
CertificateReport certify_stationarity(const Matrix& a, const StationaryResult& r,
                                       std::size_t sample_count, std::uint64_t seed,
                                       double tol = 1e-6);

struct PairBoundCheck {
  bool ok = true;
  double lhs = 0.0;          // |f(x1) - f(x2)|
  double quadratic_rhs = 0.0;
  double metric_rhs = 0.0;   // d^2 / 2, when a spectrum is supplied
};

// |f(x1*) - f(x2*)| <= (x1* - x2*)^T A (x1* - x2*), and against half the
// squared spectral distance when a spectrum is given.
PairBoundCheck stationary_pair_bound(const Matrix& a, const StationaryResult& r1,
                                     const StationaryResult& r2, const Spectrum* spectrum = nullptr,
                                     double tol = 1e-6);

}  // namespace sgnash

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sgnash/matrix.hpp"
#include "sgnash/prob_vector.hpp"

namespace sgnash {

// Full eigensystem of a symmetric matrix, eigenvalues descending and
// eigenvectors orthonormal. positive_count is the number of eigenvalues
// above a threshold relative to the largest one; xi is their sum over n.
struct Spectrum {
  Vec eigenvalues;
  std::vector<Vec> eigenvectors;
  std::size_t positive_count = 0;
  double xi = 0.0;

  std::size_t n() const { return eigenvalues.size(); }
};

struct SpectralOptions {
  double symmetry_tol = 1e-12;
  double positive_tol = 1e-9;  // relative to max(1, lambda_1)
  std::size_t max_sweeps = 100;
};

// Cyclic Jacobi rotations. Adequate and very accurate for dense matrices at
// this scale. Eigenvector signs are fixed so the first nonzero component of
// each vector is positive.
Spectrum eig_sym(const Matrix& m, const SpectralOptions& opts = {});

double xi_value(const Spectrum& s, std::size_t n);

// Sum of the positive eigenvalues' rank-one terms; nonnegative definite of
// rank positive_count. This matrix carries all the non-convexity of the
// regret function and induces the squared metric d2 below.
struct PositivePart {
  Matrix a_plus;
  std::size_t rank = 0;
};

PositivePart positive_part(const Spectrum& s);

// d^2(a, b), evaluated both as the eigenvalue sum and as the quadratic form
// in A_plus; the two are cross-checked before the value is returned.
double metric_d2(const PositivePart& p, const Spectrum& s, const Vec& a, const Vec& b);

// Coordinates of x on the positive eigenspace.
Vec project_positive(const Spectrum& s, const ProbVector& x);

// (I - e y^T) A_plus (I - y e^T): the quadratic form that measures d^2 to y
// directly on probability vectors.
Matrix centered_positive_part(const PositivePart& p, const ProbVector& y);

struct SpectralSumCheck {
  bool ok = true;
  double xi = 0.0;
  double sqrt_m = 0.0;
  double sum_sq = 0.0;         // sum of squared eigenvalues
  double expected_sum_sq = 0.0;  // 2 * edge count
  std::vector<std::string> failures;
};

// xi <= sqrt(m) along with the Cauchy-Schwarz chain and the trace identity
// sum lambda_i^2 = 2 |E| for simple-graph adjacency spectra. A failure here
// points at the eigensolver, not at the input.
SpectralSumCheck spectral_sum_bound_check(const Spectrum& s, std::size_t edge_count);

struct CoveringOptions {
  std::size_t enumeration_cap = 2000000;
  double tol = 1e-9;
};

struct CoveringResult {
  double min_d2 = 0.0;
  double bound = 0.0;
  bool ok = false;
  std::vector<std::size_t> best_support;
};

// Enumerates all supports of size at most 1/epsilon and minimizes
// d^2(P(x), P(y)) over each face exactly, via the closed form
// 1 / (e^T G^-1 e) when its solution is feasible and exact face
// enumeration otherwise. Verifies the minimum against epsilon * xi.
CoveringResult covering_check(const PositivePart& p, const Spectrum& s, const ProbVector& y,
                              double epsilon, const CoveringOptions& opts = {});

// Exact minimum of x^T q x over probability vectors supported inside
// `support` (q nonnegative definite). Exposed for the covering machinery
// and its tests.
std::pair<double, Vec> min_quadratic_on_support(const Matrix& q,
                                                const std::vector<std::size_t>& support);

// Regret evaluated through the spectral split of A + A^T; agrees with the
// direct formula and isolates the convex and concave parts.
double regret_via_spectrum(const Matrix& a, const Spectrum& s, const Vec& x);

}  // namespace sgnash

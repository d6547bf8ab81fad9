#include "sgnash/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sgnash/errors.hpp"

namespace sgnash {

namespace {

constexpr double kCrossCheckTol = 1e-10;
constexpr double kPinvCutoff = 1e-10;

double frobenius(const Matrix& m) {
  double s = 0.0;
  for (double x : m.data()) s += x * x;
  return std::sqrt(s);
}

double off_diagonal_frobenius(const Matrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

}  // namespace

Spectrum eig_sym(const Matrix& m, const SpectralOptions& opts) {
  if (m.rows() != m.cols()) throw NotSymmetric("matrix is not square");
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::fabs(m(i, j) - m(j, i)) > opts.symmetry_tol)
        throw NotSymmetric("matrix is not symmetric within tolerance");

  Matrix b = m;
  // Symmetrize away roundoff so the rotations stay exact mirrors.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (b(i, j) + b(j, i));
      b(i, j) = avg;
      b(j, i) = avg;
    }
  Matrix v = Matrix::identity(n);

  const double threshold = std::max(1e-300, 1e-12 * frobenius(m));
  bool converged = off_diagonal_frobenius(b) <= threshold;
  for (std::size_t sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = b(p, q);
        if (std::fabs(apq) <= 1e-300) continue;
        const double theta = 0.5 * (b(q, q) - b(p, p)) / apq;
        double t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double h = t * apq;
        b(p, p) -= h;
        b(q, q) += h;
        b(p, q) = 0.0;
        b(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = b(k, p);
          const double akq = b(k, q);
          b(k, p) = akp - s * (akq + tau * akp);
          b(p, k) = b(k, p);
          b(k, q) = akq + s * (akp - tau * akq);
          b(q, k) = b(k, q);
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = vkp - s * (vkq + tau * vkp);
          v(k, q) = vkq + s * (vkp - tau * vkq);
        }
      }
    }
    converged = off_diagonal_frobenius(b) <= threshold;
  }
  if (!converged) throw ConvergenceFailure("jacobi sweeps exhausted");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t c) { return b(a, a) > b(c, c); });

  Spectrum s;
  s.eigenvalues.resize(n);
  s.eigenvectors.assign(n, Vec(n, 0.0));
  for (std::size_t r = 0; r < n; ++r) {
    s.eigenvalues[r] = b(order[r], order[r]);
    for (std::size_t k = 0; k < n; ++k) s.eigenvectors[r][k] = v(k, order[r]);
    for (std::size_t k = 0; k < n; ++k) {
      if (std::fabs(s.eigenvectors[r][k]) > 1e-12) {
        if (s.eigenvectors[r][k] < 0.0)
          for (double& x : s.eigenvectors[r]) x = -x;
        break;
      }
    }
  }

  const double lambda1 = n > 0 ? s.eigenvalues[0] : 0.0;
  const double positive_cut = opts.positive_tol * std::max(1.0, lambda1);
  double positive_sum = 0.0;
  for (double lambda : s.eigenvalues) {
    if (lambda > positive_cut) {
      ++s.positive_count;
      positive_sum += lambda;
    }
  }
  s.xi = n > 0 ? positive_sum / static_cast<double>(n) : 0.0;
  return s;
}

double xi_value(const Spectrum& s, std::size_t n) {
  double positive_sum = 0.0;
  for (std::size_t i = 0; i < s.positive_count; ++i) positive_sum += s.eigenvalues[i];
  return positive_sum / static_cast<double>(n);
}

PositivePart positive_part(const Spectrum& s) {
  const std::size_t n = s.n();
  PositivePart p;
  p.rank = s.positive_count;
  p.a_plus = Matrix(n, n, 0.0);
  for (std::size_t r = 0; r < s.positive_count; ++r) {
    const Vec& z = s.eigenvectors[r];
    const double lambda = s.eigenvalues[r];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p.a_plus(i, j) += lambda * z[i] * z[j];
  }
  return p;
}

double metric_d2(const PositivePart& p, const Spectrum& s, const Vec& a, const Vec& b) {
  if (a.size() != s.n() || b.size() != s.n())
    throw DimensionMismatch("metric_d2: vector dimension does not match the spectrum");
  const Vec d = sub(a, b);
  double by_eigen = 0.0;
  for (std::size_t r = 0; r < s.positive_count; ++r) {
    const double proj = dot(s.eigenvectors[r], d);
    by_eigen += s.eigenvalues[r] * proj * proj;
  }
  const double by_form = quad_form(p.a_plus, d, d);
  if (std::fabs(by_eigen - by_form) > kCrossCheckTol)
    throw NumericalFailure("metric_d2 cross-check failed");
  return std::max(0.0, by_eigen);
}

Vec project_positive(const Spectrum& s, const ProbVector& x) {
  if (x.size() != s.n())
    throw DimensionMismatch("project_positive: dimension does not match the spectrum");
  if (s.positive_count == 0)
    throw EmptyPositiveSpectrum("no positive eigenvalues; the regret function is convex");
  Vec coords(s.positive_count);
  for (std::size_t r = 0; r < s.positive_count; ++r)
    coords[r] = dot(s.eigenvectors[r], x.vec());
  return coords;
}

Matrix centered_positive_part(const PositivePart& p, const ProbVector& y) {
  const std::size_t n = p.a_plus.rows();
  if (y.size() != n)
    throw DimensionMismatch("centered_positive_part: center dimension mismatch");
  const Vec ay = matvec(p.a_plus, y.vec());
  const double yay = dot(y.vec(), ay);
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = p.a_plus(i, j) - ay[i] - ay[j] + yay;
  return out;
}

SpectralSumCheck spectral_sum_bound_check(const Spectrum& s, std::size_t edge_count) {
  SpectralSumCheck out;
  const std::size_t n = s.n();
  const double m = static_cast<double>(s.positive_count);
  out.xi = s.xi;
  out.sqrt_m = std::sqrt(m);
  double sum_pos = 0.0, sum_sq_pos = 0.0, sum_sq_all = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lambda = s.eigenvalues[i];
    sum_sq_all += lambda * lambda;
    if (i < s.positive_count) {
      sum_pos += lambda;
      sum_sq_pos += lambda * lambda;
    }
  }
  out.sum_sq = sum_sq_all;
  out.expected_sum_sq = 2.0 * static_cast<double>(edge_count);

  if (out.xi > out.sqrt_m + 1e-9) out.failures.push_back("xi exceeds sqrt(m)");
  if (sum_pos * sum_pos > m * sum_sq_pos + 1e-9)
    out.failures.push_back("(sum positive)^2 exceeds m * sum of squares over positives");
  if (sum_sq_pos > sum_sq_all + 1e-9)
    out.failures.push_back("positive square sum exceeds total square sum");
  const double nn = static_cast<double>(n);
  if (sum_sq_all > m * nn * nn + 1e-9 && s.positive_count > 0)
    out.failures.push_back("total square sum exceeds m * n^2");
  if (std::fabs(sum_sq_all - out.expected_sum_sq) > 1e-6)
    out.failures.push_back("square sum does not equal twice the edge count");
  out.ok = out.failures.empty();
  return out;
}

std::pair<double, Vec> min_quadratic_on_support(const Matrix& q,
                                                const std::vector<std::size_t>& support) {
  if (support.empty()) throw Error("empty support");
  if (support.size() > 20) throw TooLarge("support too large for exact face enumeration");
  const std::size_t n = q.rows();
  double best = std::numeric_limits<double>::infinity();
  Vec best_x(n, 0.0);

  const std::size_t k = support.size();
  // Every subset is a candidate face; the constrained minimum sits in the
  // relative interior of one of them.
  for (std::size_t mask = 1; mask < (1u << k); ++mask) {
    std::vector<std::size_t> face;
    for (std::size_t b = 0; b < k; ++b)
      if (mask & (1u << b)) face.push_back(support[b]);
    const std::size_t f = face.size();

    Vec cand(f, 0.0);
    double value = 0.0;
    if (f == 1) {
      cand[0] = 1.0;
      value = q(face[0], face[0]);
    } else {
      Matrix g(f, f);
      for (std::size_t i = 0; i < f; ++i)
        for (std::size_t j = 0; j < f; ++j) g(i, j) = q(face[i], face[j]);
      Spectrum gs = eig_sym(g);
      const double cut = kPinvCutoff * std::max(1.0, std::fabs(gs.eigenvalues[0]));

      // Null direction with mass: the face minimum is exactly zero there.
      bool null_hit = false;
      for (std::size_t r = 0; r < f && !null_hit; ++r) {
        if (std::fabs(gs.eigenvalues[r]) > cut) continue;
        double mass = 0.0;
        for (double z : gs.eigenvectors[r]) mass += z;
        if (std::fabs(mass) > 1e-9) {
          for (std::size_t i = 0; i < f; ++i) cand[i] = gs.eigenvectors[r][i] / mass;
          value = 0.0;
          null_hit = true;
        }
      }
      if (!null_hit) {
        // Pseudo-inverse solve of G x = mu e with e^T x = 1.
        double denom = 0.0;
        Vec sol(f, 0.0);
        for (std::size_t r = 0; r < f; ++r) {
          if (std::fabs(gs.eigenvalues[r]) <= cut) continue;
          double ze = 0.0;
          for (double z : gs.eigenvectors[r]) ze += z;
          denom += ze * ze / gs.eigenvalues[r];
          for (std::size_t i = 0; i < f; ++i)
            sol[i] += ze / gs.eigenvalues[r] * gs.eigenvectors[r][i];
        }
        if (denom <= 1e-300) continue;
        for (std::size_t i = 0; i < f; ++i) cand[i] = sol[i] / denom;
        value = 1.0 / denom;
      }
    }

    bool feasible = true;
    for (double c : cand)
      if (c < -1e-12) feasible = false;
    if (!feasible) continue;
    if (value < best) {
      best = value;
      best_x.assign(n, 0.0);
      for (std::size_t i = 0; i < f; ++i) best_x[face[i]] = std::max(0.0, cand[i]);
    }
  }

  // Coarse grid sweep over the whole face as a degenerate-case backstop.
  if (k >= 2 && k <= 4) {
    const std::size_t steps = 32;
    Vec x(k, 0.0);
    std::vector<std::size_t> comp(k, 0);
    comp[0] = steps;
    while (true) {
      for (std::size_t i = 0; i < k; ++i) x[i] = static_cast<double>(comp[i]) / steps;
      double val = 0.0;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) val += q(support[i], support[j]) * x[i] * x[j];
      if (val < best) {
        best = val;
        best_x.assign(n, 0.0);
        for (std::size_t i = 0; i < k; ++i) best_x[support[i]] = x[i];
      }
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

  return {std::max(0.0, best), best_x};
}

namespace {

void enumerate_subsets_upto(std::size_t n, std::size_t k, std::size_t cap,
                            std::vector<std::vector<std::size_t>>& out) {
  for (std::size_t size = 1; size <= k && size <= n; ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      if (out.size() >= cap) throw TooLarge("support enumeration exceeds the configured cap");
      out.push_back(idx);
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == n - size + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

}  // namespace

CoveringResult covering_check(const PositivePart& p, const Spectrum& s, const ProbVector& y,
                              double epsilon, const CoveringOptions& opts) {
  const std::size_t n = p.a_plus.rows();
  const double inv = 1.0 / epsilon;
  const auto k = static_cast<std::size_t>(std::llround(inv));
  if (std::fabs(inv - static_cast<double>(k)) > 1e-9 || k == 0)
    throw Error("covering_check: 1/epsilon must be a positive integer");
  if (k > n) throw Error("covering_check: 1/epsilon exceeds the dimension");

  const Matrix centered = centered_positive_part(p, y);

  CoveringResult out;
  out.bound = epsilon * s.xi;
  out.min_d2 = std::numeric_limits<double>::infinity();

  std::vector<std::vector<std::size_t>> supports;
  enumerate_subsets_upto(n, k, opts.enumeration_cap, supports);
  for (const auto& support : supports) {
    auto [value, x] = min_quadratic_on_support(centered, support);
    if (value < out.min_d2) {
      out.min_d2 = value;
      out.best_support = support;
    }
  }
  out.ok = out.min_d2 <= out.bound + opts.tol;
  return out;
}

double regret_via_spectrum(const Matrix& a, const Spectrum& s, const Vec& x) {
  const Vec ax = matvec(a, x);
  double convex = 0.0, concave = 0.0;
  for (std::size_t r = 0; r < s.n(); ++r) {
    const double proj = dot(s.eigenvectors[r], x);
    if (r < s.positive_count)
      concave += s.eigenvalues[r] * proj * proj;
    else
      convex += std::fabs(s.eigenvalues[r]) * proj * proj;
  }
  return max_entry(ax) + 0.5 * convex - 0.5 * concave;
}

}  // namespace sgnash

#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

#include "sgnash/errors.hpp"
#include "sgnash/matrix.hpp"

namespace sgnash {

// A point of the standard simplex: nonnegative entries summing to one
// within 1e-12. The descent, search and oracle layers all move these around.
class ProbVector {
 public:
  ProbVector() = default;

  explicit ProbVector(Vec entries) : v_(std::move(entries)) {
    double sum = 0.0;
    for (double x : v_) {
      if (x < 0.0) throw InvalidProbability("negative probability entry");
      sum += x;
    }
    if (std::fabs(sum - 1.0) > 1e-12) throw InvalidProbability("entries do not sum to 1");
  }

  static ProbVector uniform(std::size_t n) {
    ProbVector p;
    p.v_.assign(n, 1.0 / static_cast<double>(n));
    return p;
  }

  static ProbVector vertex(std::size_t n, std::size_t i) {
    ProbVector p;
    p.v_.assign(n, 0.0);
    p.v_[i] = 1.0;
    return p;
  }

  // Clamps small negatives to zero and rescales so the sum is exactly 1.
  // Used to clean solver output before it re-enters the pipeline.
  static ProbVector cleaned(Vec raw) {
    double sum = 0.0;
    for (double& x : raw) {
      if (x < 0.0) x = 0.0;
      sum += x;
    }
    if (sum <= 0.0) throw InvalidProbability("cannot normalize a zero vector");
    for (double& x : raw) x /= sum;
    ProbVector p;
    p.v_ = std::move(raw);
    return p;
  }

  std::size_t size() const { return v_.size(); }
  double operator[](std::size_t i) const { return v_[i]; }
  const Vec& vec() const { return v_; }

  std::vector<std::size_t> support(double tol = 1e-9) const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < v_.size(); ++i)
      if (v_[i] > tol) s.push_back(i);
    return s;
  }

 private:
  Vec v_;
};

inline ProbVector mix(const ProbVector& a, const ProbVector& b, double t) {
  Vec m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = (1.0 - t) * a[i] + t * b[i];
  return ProbVector::cleaned(std::move(m));
}

}  // namespace sgnash

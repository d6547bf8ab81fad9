#pragma once

#include <cmath>
#include <cstdint>

#include "sgnash/matrix.hpp"
#include "sgnash/prob_vector.hpp"

namespace sgnash {

// Deterministic 64-bit generator. The <random> distributions are
// implementation-defined, so seeded output would not be reproducible
// across standard libraries; this one is bit-stable everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n), rejection sampled to kill modulo bias.
  std::uint64_t next_below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  bool next_bool() { return (next() & 1) != 0; }

 private:
  std::uint64_t state_;
};

// Uniform point of the simplex via normalized exponentials.
inline ProbVector random_simplex_point(SplitMix64& rng, std::size_t n) {
  Vec raw(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    raw[i] = -std::log(1.0 - rng.next_double());
    sum += raw[i];
  }
  if (sum <= 0.0) return ProbVector::uniform(n);
  for (double& x : raw) x /= sum;
  return ProbVector::cleaned(std::move(raw));
}

}  // namespace sgnash

#include "sgnash/generator.hpp"

#include <algorithm>
#include <vector>

#include "sgnash/errors.hpp"
#include "sgnash/graph.hpp"
#include "sgnash/rng.hpp"

namespace sgnash {

namespace {

int side_of(std::size_t i, std::size_t n) { return i < (n + 1) / 2 ? 0 : 1; }

bool edge_allowed(const Matrix& a, std::size_t from, std::size_t to, std::size_t n,
                  bool bipartite) {
  if (from == to) return false;
  if (a(from, to) != 0.0 || a(to, from) != 0.0) return false;
  if (bipartite && side_of(from, n) == side_of(to, n)) return false;
  return true;
}

std::vector<std::size_t> out_neighbors(const Matrix& a, std::size_t i) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (a(i, j) == 1.0) out.push_back(j);
  return out;
}

// One structural repair per call; reports whether anything was changed.
// Column and neighbor-set fixes only ever add edges, connectivity runs
// last so it cannot reintroduce empty columns.
bool repair_step(Matrix& a, std::size_t n, bool bipartite, SplitMix64& rng) {
  for (std::size_t v = 0; v < n; ++v) {
    bool has_in = false;
    for (std::size_t u = 0; u < n; ++u)
      if (a(u, v) == 1.0) has_in = true;
    if (has_in) continue;
    std::vector<std::size_t> candidates;
    for (std::size_t u = 0; u < n; ++u)
      if (edge_allowed(a, u, v, n, bipartite)) candidates.push_back(u);
    if (candidates.empty()) throw GenerationFailure("no way to fill an empty column");
    a(candidates[rng.next_below(candidates.size())], v) = 1.0;
    return true;
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto ni = out_neighbors(a, i);
      const auto nj = out_neighbors(a, j);
      const bool subset =
          std::includes(nj.begin(), nj.end(), ni.begin(), ni.end());  // includes empty ni
      if (!subset) continue;
      std::vector<std::size_t> candidates;
      for (std::size_t k = 0; k < n; ++k) {
        if (a(j, k) == 1.0) continue;  // must leave j's neighbor set
        if (edge_allowed(a, i, k, n, bipartite)) candidates.push_back(k);
      }
      if (candidates.empty()) throw GenerationFailure("no way to break a dominated neighbor set");
      a(i, candidates[rng.next_below(candidates.size())]) = 1.0;
      return true;
    }
  }

  // Connectivity of A + A^T.
  std::vector<int> comp(n, -1);
  int comp_count = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (comp[start] != -1) continue;
    std::vector<std::size_t> stack{start};
    comp[start] = comp_count;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v) {
        if (comp[v] == -1 && (a(u, v) == 1.0 || a(v, u) == 1.0)) {
          comp[v] = comp_count;
          stack.push_back(v);
        }
      }
    }
    ++comp_count;
  }
  if (comp_count > 1) {
    std::vector<std::pair<std::size_t, std::size_t>> candidates;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if (comp[u] == 0 && comp[v] != 0 && edge_allowed(a, u, v, n, bipartite))
          candidates.emplace_back(u, v);
    if (candidates.empty()) throw GenerationFailure("no way to connect components");
    const auto [u, v] = candidates[rng.next_below(candidates.size())];
    if (rng.next_bool())
      a(u, v) = 1.0;
    else
      a(v, u) = 1.0;
    return true;
  }
  return false;
}

}  // namespace

Matrix generate_winlose(std::size_t n, double p, std::uint64_t seed, bool bipartite) {
  if (n < 2) throw Error("generator needs n >= 2");
  if (p <= 0.0 || p >= 1.0) throw Error("edge probability must lie in (0, 1)");

  SplitMix64 rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Matrix a(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (bipartite && side_of(i, n) == side_of(j, n)) continue;
        if (rng.next_double() >= p) continue;
        if (rng.next_bool())
          a(i, j) = 1.0;
        else
          a(j, i) = 1.0;
      }
    }
    try {
      for (int round = 0; round < 100; ++round) {
        SymmetricGame g;
        g.A = a;
        if (validate_winlose(g).empty()) {
          return a;
        }
        if (!repair_step(a, n, bipartite, rng)) break;
      }
    } catch (const GenerationFailure&) {
      // fall through to a fresh draw
    }
  }
  throw GenerationFailure("could not generate a valid instance in 100 attempts");
}

SymmetricGame generate_winlose_game(std::size_t n, double p, std::uint64_t seed, bool bipartite) {
  SymmetricGame g;
  g.A = generate_winlose(n, p, seed, bipartite);
  g.zero_diagonal = true;
  g.no_zero_column = true;
  g.no_dominated_row = true;  // the neighbor-set property was just validated
  return g;
}

BimatrixGame generate_bimatrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  if (rows == 0 || cols == 0) throw Error("generator needs nonempty matrices");
  SplitMix64 rng(seed);
  BimatrixGame g;
  g.R = Matrix(rows, cols);
  g.C = Matrix(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) g.R(i, j) = rng.next_double();
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) g.C(i, j) = rng.next_double();
  return g;
}

}  // namespace sgnash

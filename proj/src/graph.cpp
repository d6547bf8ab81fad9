#include "sgnash/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "sgnash/errors.hpp"

namespace sgnash {

namespace {

bool is_binary(double x) { return x == 0.0 || x == 1.0; }

std::vector<std::size_t> component_of(const Matrix& adj, std::size_t start,
                                      std::vector<bool>& seen) {
  const std::size_t n = adj.rows();
  std::vector<std::size_t> nodes;
  std::deque<std::size_t> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    nodes.push_back(u);
    for (std::size_t v = 0; v < n; ++v) {
      if (!seen[v] && adj(u, v) != 0.0) {
        seen[v] = true;
        queue.push_back(v);
      }
    }
  }
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

}  // namespace

InducedGraph induced_graph(const SymmetricGame& g) {
  const std::size_t n = g.n();
  InducedGraph out;
  out.n = n;
  out.undirected_adjacency = Matrix(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (std::fabs(g.A(i, j) - 1.0) <= 1e-12) {
        out.directed_edges.emplace_back(i, j);
        out.undirected_adjacency(i, j) += 1.0;
        out.undirected_adjacency(j, i) += 1.0;
      }
    }
  return out;
}

std::vector<PropertyViolation> validate_winlose(const SymmetricGame& g) {
  const std::size_t n = g.n();
  const Matrix& a = g.A;
  std::vector<PropertyViolation> violations;

  bool binary = true;
  for (double x : a.data())
    if (!is_binary(x)) binary = false;
  if (!binary) {
    violations.push_back({WinLoseProperty::BinaryEntriesWithNonzeroColumns,
                          "matrix entries are not all 0 or 1"});
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      bool has_one = false;
      for (std::size_t i = 0; i < n; ++i)
        if (a(i, j) == 1.0) has_one = true;
      if (!has_one) {
        violations.push_back({WinLoseProperty::BinaryEntriesWithNonzeroColumns,
                              "column " + std::to_string(j) + " has no 1"});
        break;
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (a(i, i) != 0.0) {
      violations.push_back(
          {WinLoseProperty::ZeroDiagonal, "diagonal entry " + std::to_string(i) + " is nonzero"});
      break;
    }
  }

  for (std::size_t i = 0; i < n && binary; ++i) {
    bool done = false;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a(i, j) + a(j, i) > 1.0) {
        violations.push_back({WinLoseProperty::NoAntiparallelEdges,
                              "both directions present between " + std::to_string(i) + " and " +
                                  std::to_string(j)});
        done = true;
        break;
      }
    }
    if (done) break;
  }

  // Out-neighbor set of any row must not be contained in another row's.
  if (binary) {
    bool done = false;
    for (std::size_t i = 0; i < n && !done; ++i) {
      for (std::size_t j = 0; j < n && !done; ++j) {
        if (i == j) continue;
        bool subset = true;
        for (std::size_t k = 0; k < n; ++k)
          if (a(i, k) == 1.0 && a(j, k) != 1.0) subset = false;
        if (subset) {
          violations.push_back({WinLoseProperty::NoDominatedNeighborSet,
                                "neighbors of row " + std::to_string(i) +
                                    " are contained in neighbors of row " + std::to_string(j)});
          done = true;
        }
      }
    }
  }

  {
    Matrix undirected(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) undirected(i, j) = a(i, j) + a(j, i);
    std::vector<bool> seen(n, false);
    if (n > 0) {
      const auto comp = component_of(undirected, 0, seen);
      if (comp.size() != n)
        violations.push_back({WinLoseProperty::Connected, "induced graph is disconnected"});
    }
  }
  return violations;
}

std::vector<Component> decompose(const SymmetricGame& g) {
  const std::size_t n = g.n();
  Matrix pattern(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) pattern(i, j) = (g.A(i, j) != 0.0 || g.A(j, i) != 0.0) ? 1.0 : 0.0;

  std::vector<Component> components;
  std::vector<bool> seen(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    Component c;
    c.nodes = component_of(pattern, start, seen);
    Matrix sub(c.nodes.size(), c.nodes.size());
    for (std::size_t i = 0; i < c.nodes.size(); ++i)
      for (std::size_t j = 0; j < c.nodes.size(); ++j) sub(i, j) = g.A(c.nodes[i], c.nodes[j]);
    c.game.A = std::move(sub);
    c.game.zero_diagonal = g.zero_diagonal;
    c.game.no_zero_column = g.no_zero_column;
    c.game.no_dominated_row = false;
    components.push_back(std::move(c));
  }
  return components;
}

BipartiteResult is_bipartite(const InducedGraph& g, const Spectrum* spectrum) {
  BipartiteResult out;
  out.side.assign(g.n, -1);
  out.bipartite = true;
  for (std::size_t start = 0; start < g.n && out.bipartite; ++start) {
    if (out.side[start] != -1) continue;
    out.side[start] = 0;
    std::deque<std::size_t> queue{start};
    while (!queue.empty() && out.bipartite) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v = 0; v < g.n; ++v) {
        if (g.undirected_adjacency(u, v) == 0.0) continue;
        if (out.side[v] == -1) {
          out.side[v] = 1 - out.side[u];
          queue.push_back(v);
        } else if (out.side[v] == out.side[u]) {
          out.bipartite = false;
          break;
        }
      }
    }
  }
  if (!out.bipartite) out.side.clear();

  if (out.bipartite && spectrum != nullptr) {
    out.spectrum_symmetric = true;
    const std::size_t n = spectrum->n();
    for (std::size_t i = 0; i < n; ++i) {
      if (std::fabs(spectrum->eigenvalues[i] + spectrum->eigenvalues[n - 1 - i]) > 1e-8)
        out.spectrum_symmetric = false;
    }
  }
  return out;
}

PerronReport perron_check(const InducedGraph& g, const Spectrum& s) {
  PerronReport out;
  const std::size_t n = s.n();
  if (n == 0) return out;
  out.lambda1 = s.eigenvalues[0];
  out.lambda_min = s.eigenvalues[n - 1];

  if (out.lambda1 < 0.0) {
    out.failures.push_back("largest eigenvalue is negative");
  }
  if (out.lambda1 < std::fabs(out.lambda_min) - 1e-8) {
    out.failures.push_back("largest eigenvalue does not dominate in absolute value");
  }

  std::vector<bool> seen(n, false);
  out.connected = component_of(g.undirected_adjacency, 0, seen).size() == n;
  if (out.connected && n > 1) {
    out.simple_top_eigenvalue = s.eigenvalues[0] - s.eigenvalues[1] > 1e-8;
    if (!out.simple_top_eigenvalue)
      out.failures.push_back("top eigenvalue is not simple on a connected graph");

    const Vec& z1 = s.eigenvectors[0];
    double signed_max = 0.0;
    for (double x : z1)
      if (std::fabs(x) > std::fabs(signed_max)) signed_max = x;
    const double flip = signed_max < 0.0 ? -1.0 : 1.0;
    out.positive_eigenvector = true;
    for (double x : z1)
      if (flip * x <= 1e-10) out.positive_eigenvector = false;
    if (!out.positive_eigenvector)
      out.failures.push_back("principal eigenvector is not strictly positive");
  }
  out.ok = out.failures.empty();
  return out;
}

}  // namespace sgnash

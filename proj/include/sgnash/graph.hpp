#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sgnash/core.hpp"
#include "sgnash/matrix.hpp"
#include "sgnash/spectral.hpp"

namespace sgnash {

// Directed graph read off a win-lose payoff matrix: edge (i, j) iff
// A_ij = 1, directed from row to column. The undirected adjacency is
// A + A^T.
struct InducedGraph {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> directed_edges;
  Matrix undirected_adjacency;
};

InducedGraph induced_graph(const SymmetricGame& g);

enum class WinLoseProperty {
  BinaryEntriesWithNonzeroColumns,
  ZeroDiagonal,
  NoAntiparallelEdges,
  NoDominatedNeighborSet,
  Connected,
};

struct PropertyViolation {
  WinLoseProperty property;
  std::string detail;
};

// Checks the five structural properties a reduced win-lose instance must
// satisfy. Violations are data for the caller, not errors.
std::vector<PropertyViolation> validate_winlose(const SymmetricGame& g);

struct Component {
  std::vector<std::size_t> nodes;  // original indices, ascending
  SymmetricGame game;              // principal submatrix on the nodes
};

// Connected components of the nonzero pattern of A + A^T. An equilibrium of
// any component lifts to the whole game by zero padding.
std::vector<Component> decompose(const SymmetricGame& g);

struct BipartiteResult {
  bool bipartite = false;
  std::vector<int> side;            // 0/1 coloring when bipartite
  bool spectrum_symmetric = false;  // audited when a spectrum is supplied
};

BipartiteResult is_bipartite(const InducedGraph& g, const Spectrum* spectrum = nullptr);

struct PerronReport {
  bool ok = true;
  double lambda1 = 0.0;
  double lambda_min = 0.0;
  bool connected = false;
  bool simple_top_eigenvalue = false;
  bool positive_eigenvector = false;
  std::vector<std::string> failures;
};

// Largest eigenvalue dominates in absolute value and is nonnegative; on a
// connected graph it is simple with a strictly positive eigenvector. A
// failure indicates an eigensolver bug or a missed decomposition.
PerronReport perron_check(const InducedGraph& g, const Spectrum& s);

}  // namespace sgnash

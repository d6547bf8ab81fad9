#pragma once

#include <cstddef>
#include <cstdint>

#include "sgnash/core.hpp"
#include "sgnash/matrix.hpp"

namespace sgnash {

// Random simple digraph on n nodes: each unordered pair independently gets
// no edge with probability 1 - p, otherwise one uniformly chosen direction.
// The draw is then repaired until it satisfies the reduced win-lose
// structure (nonzero columns, no dominated neighbor sets, connected), so
// every returned instance passes validate_winlose. Deterministic per seed.
Matrix generate_winlose(std::size_t n, double p, std::uint64_t seed, bool bipartite = false);

SymmetricGame generate_winlose_game(std::size_t n, double p, std::uint64_t seed,
                                    bool bipartite = false);

// Independent uniform [0, 1] payoffs.
BimatrixGame generate_bimatrix(std::size_t rows, std::size_t cols, std::uint64_t seed);

}  // namespace sgnash

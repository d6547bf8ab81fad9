#pragma once

#include <iosfwd>
#include <string>

#include "sgnash/core.hpp"
#include "sgnash/matrix.hpp"

namespace sgnash {

// Text format:
//   bimatrix <l1> <l2>   followed by l1 rows of R then l1 rows of C
//   symmetric <n>        followed by n rows of A
// Entries are whitespace-separated decimals written in shortest exact
// form, so write-then-read reproduces every value bit for bit.
struct GameFile {
  enum class Kind { Bimatrix, Symmetric };
  Kind kind = Kind::Symmetric;
  BimatrixGame bimatrix;
  Matrix symmetric;
};

GameFile parse_game(std::istream& in);
GameFile parse_game_string(const std::string& text);
GameFile load_game(const std::string& path);

std::string serialize_game(const GameFile& game);
std::string format_double(double x);

}  // namespace sgnash

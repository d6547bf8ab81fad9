#include "sgnash/gamefile.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "sgnash/errors.hpp"

namespace sgnash {

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream stream(line);
  std::string tok;
  while (stream >> tok) out.push_back(tok);
  return out;
}

double parse_entry(const std::string& tok, int line_number) {
  double value = 0.0;
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError("invalid numeric entry '" + tok + "'", line_number);
  return value;
}

std::size_t parse_dim(const std::string& tok, int line_number) {
  unsigned long long value = 0;
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || value == 0)
    throw ParseError("invalid dimension '" + tok + "'", line_number);
  return static_cast<std::size_t>(value);
}

Matrix read_rows(std::istream& in, std::size_t rows, std::size_t cols, int& line_number) {
  Matrix m(rows, cols);
  std::string line;
  std::size_t r = 0;
  while (r < rows) {
    if (!std::getline(in, line)) throw ParseError("unexpected end of file", line_number);
    ++line_number;
    const auto toks = tokens(line);
    if (toks.empty()) continue;  // blank lines are permitted between rows
    if (toks.size() != cols)
      throw ParseError("expected " + std::to_string(cols) + " entries, found " +
                           std::to_string(toks.size()),
                       line_number);
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse_entry(toks[c], line_number);
    ++r;
  }
  return m;
}

}  // namespace

GameFile parse_game(std::istream& in) {
  int line_number = 0;
  std::string line;
  std::vector<std::string> header;
  while (header.empty()) {
    if (!std::getline(in, line)) throw ParseError("missing header", line_number + 1);
    ++line_number;
    header = tokens(line);
  }

  GameFile out;
  if (header[0] == "bimatrix") {
    if (header.size() != 3) throw ParseError("header must be 'bimatrix <l1> <l2>'", line_number);
    const std::size_t l1 = parse_dim(header[1], line_number);
    const std::size_t l2 = parse_dim(header[2], line_number);
    out.kind = GameFile::Kind::Bimatrix;
    out.bimatrix.R = read_rows(in, l1, l2, line_number);
    out.bimatrix.C = read_rows(in, l1, l2, line_number);
  } else if (header[0] == "symmetric") {
    if (header.size() != 2) throw ParseError("header must be 'symmetric <n>'", line_number);
    const std::size_t n = parse_dim(header[1], line_number);
    out.kind = GameFile::Kind::Symmetric;
    out.symmetric = read_rows(in, n, n, line_number);
  } else {
    throw ParseError("unknown header keyword '" + header[0] + "'", line_number);
  }

  while (std::getline(in, line)) {
    ++line_number;
    if (!tokens(line).empty()) throw ParseError("trailing content after the game", line_number);
  }
  return out;
}

GameFile parse_game_string(const std::string& text) {
  std::istringstream stream(text);
  return parse_game(stream);
}

GameFile load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return parse_game(in);
}

std::string format_double(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw Error("double serialization failed");
  return std::string(buf, ptr);
}

namespace {

void write_matrix(std::string& out, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ' ';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
}

}  // namespace

std::string serialize_game(const GameFile& game) {
  std::string out;
  if (game.kind == GameFile::Kind::Bimatrix) {
    out += "bimatrix " + std::to_string(game.bimatrix.num_rows()) + ' ' +
           std::to_string(game.bimatrix.num_cols()) + '\n';
    write_matrix(out, game.bimatrix.R);
    write_matrix(out, game.bimatrix.C);
  } else {
    out += "symmetric " + std::to_string(game.symmetric.rows()) + '\n';
    write_matrix(out, game.symmetric);
  }
  return out;
}

}  // namespace sgnash

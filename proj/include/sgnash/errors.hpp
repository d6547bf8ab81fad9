#pragma once

#include <stdexcept>
#include <string>

namespace sgnash {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};
struct ConstantMatrix : Error {
  using Error::Error;
};
struct ZeroBlock : Error {
  using Error::Error;
};
struct NonPositiveConstant : Error {
  using Error::Error;
};
struct InvalidProbability : Error {
  using Error::Error;
};

// LP layer. NumericalFailure marks a stalled or inconsistent simplex run.
struct LpFailure : Error {
  using Error::Error;
};
struct NumericalFailure : LpFailure {
  using LpFailure::LpFailure;
};

struct InfeasibleRegion : Error {
  using Error::Error;
};
struct NotDescent : Error {
  using Error::Error;
};
struct NotSymmetric : Error {
  using Error::Error;
};
struct ConvergenceFailure : Error {
  using Error::Error;
};
struct EmptyPositiveSpectrum : Error {
  using Error::Error;
};
struct TooLarge : Error {
  using Error::Error;
};
struct AllRegionsFailed : Error {
  using Error::Error;
};
struct GenerationFailure : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& msg, int line_number)
      : Error(msg + " (line " + std::to_string(line_number) + ")"), line(line_number) {}
  int line;
};

}  // namespace sgnash

#pragma once

#include <stdexcept>
#include <string>

namespace latdist {

// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotSquareError : Error {
  using Error::Error;
};

struct NotHermitianError : Error {
  using Error::Error;
};

struct DimensionMismatchError : Error {
  using Error::Error;
};

struct NonFiniteError : Error {
  using Error::Error;
};

struct TooSmallError : Error {
  using Error::Error;
};

struct TooLargeError : Error {
  using Error::Error;
};

struct LengthMismatchError : Error {
  using Error::Error;
};

struct IncompatibleKindError : Error {
  using Error::Error;
};

struct IndexOutOfRangeError : Error {
  using Error::Error;
};

struct NoArrowsError : Error {
  using Error::Error;
};

struct InvariantViolationError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

// Malformed input file; carries the 1-based line number of the offending line.
struct ParseError : Error {
  ParseError(int line_number, const std::string& message)
      : Error("line " + std::to_string(line_number) + ": " + message),
        line(line_number) {}
  int line;
};

}  // namespace latdist

#pragma once

#include <stdexcept>
#include <string>

namespace puzred {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input that cannot be interpreted at all: dangling ids, malformed containers.
struct StructuralError : Error {
  using Error::Error;
};

// Operation required a graph class the input does not belong to.
struct ClassError : Error {
  using Error::Error;
};

// Text input rejected at a specific line.
struct ParseError : Error {
  ParseError(int line_no, const std::string& msg)
      : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
  int line;
};

// Instance exceeds a configured size guard; never returned as a wrong answer.
struct CapError : Error {
  using Error::Error;
};

// Flow network does not fit the T-shaped / L-shaped / blank vocabulary.
struct UnclassifiableError : Error {
  using Error::Error;
};

}  // namespace puzred

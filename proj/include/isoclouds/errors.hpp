#pragma once

#include <stdexcept>
#include <string>

namespace isoclouds {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed arguments: empty clouds, dimension/size mismatches, bad indices.
struct InvalidInput : Error {
  using Error::Error;
};

// Cloud is not principally generic; PCI-based operations refuse it.
struct NotGeneric : Error {
  using Error::Error;
};

// An iterative numerical routine failed to converge.
struct NumericalFailure : Error {
  using Error::Error;
};

// Brute-force reference asked to enumerate beyond its size cap.
struct TooLarge : Error {
  using Error::Error;
};

// Random-instance generator exhausted its resampling budget.
struct GenerationFailure : Error {
  using Error::Error;
};

// File input that does not parse; carries the 1-based offending line.
struct ParseError : Error {
  int line;
  ParseError(const std::string& msg, int line_number)
      : Error(msg), line(line_number) {}
};

}  // namespace isoclouds

#pragma once

#include <stdexcept>
#include <string>

namespace metrik {

// Base of every error raised by the library. The CLI maps all of these to
// exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data does not have the required shape (non-square matrix, NaN,
// negative distance, unknown label, bad JSON).
class MalformedInput : public Error {
 public:
  using Error::Error;
};

// A scalar parameter lies outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A geometric primitive was asked about a degenerate configuration, such as
// a comparison angle with a zero-length leg or a triple with repeated points.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// A request exceeds a configured size cap (exact search size, Laakso level,
// breadth-first search budget).
class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace metrik

#pragma once

#include <stdexcept>
#include <string>

namespace hnnd {

// Malformed input text (ragged rows, bad numbers, empty cells).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller asked for something the inputs cannot support (bad K, wrong
// metric for the data kind, non-positive sigma, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Geometry that admits no answer, e.g. triangulating collinear points.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hnnd

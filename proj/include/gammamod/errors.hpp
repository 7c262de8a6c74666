#pragma once

#include <stdexcept>
#include <string>

namespace gammamod {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text: bad rationals, bad documents.
struct ParseError : Error {
  using Error::Error;
};

// Shapes or dimensions do not line up.
struct DimensionError : Error {
  using Error::Error;
};

// A structural invariant of an input value fails.
struct InvariantError : Error {
  using Error::Error;
};

// Operation called outside its domain (wrong cone side, wrong object kind).
struct DomainError : Error {
  using Error::Error;
};

}  // namespace gammamod

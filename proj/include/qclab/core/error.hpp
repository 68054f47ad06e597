#pragma once

#include <stdexcept>
#include <string>

namespace qclab {

/// Malformed or out-of-contract arguments. The CLI maps this to exit code 1.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation that could not be completed at the working precision
/// (ambiguous ordering, failed bracketing, overflow). Exit code 2.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented budget (tile count, vertex count) would be exceeded. Exit code 2.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qclab

#pragma once

#include <stdexcept>
#include <string>

namespace idem {

// Domain failures: carrier violations, index mismatches, unsupported requests.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input (semiring/vector/kernel/module files).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace idem

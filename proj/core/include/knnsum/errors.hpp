#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace knnsum {

// Raised when an item, entity or term is not known to the structure queried.
class LookupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised for arguments that violate an operation's preconditions.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Fatal input failure: unreadable stream or file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-fatal per-line problem found while reading an input file.
struct Diagnostic {
  std::size_t line = 0;  // 1-based; 0 when not tied to a line
  std::string reason;

  bool operator==(const Diagnostic&) const = default;
};

}  // namespace knnsum

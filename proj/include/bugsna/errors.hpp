#pragma once

#include <stdexcept>
#include <string>

namespace bugsna {

// Malformed or unreadable input data (exit status 3 from the CLI).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad command line or configuration (exit status 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal data disagreeing with itself, e.g. records from mismatched
// window sets.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bugsna

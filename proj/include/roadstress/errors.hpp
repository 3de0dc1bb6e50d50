#pragma once

#include <stdexcept>
#include <string>

namespace roadstress {

/// Bad user input: malformed files, unknown ids, out-of-range parameters.
/// The CLI maps this to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed. The CLI maps this to exit code 2.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace roadstress

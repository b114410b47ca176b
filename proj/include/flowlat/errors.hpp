#pragma once

#include <stdexcept>
#include <string>

namespace flowlat {

// Malformed user input: bad grammar, mismatched dimensions, invalid flags.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A computation was refused because it would exceed the resource guards.
// The CLI maps this to a distinct exit code so batch drivers can skip.
class guard_error : public std::runtime_error {
 public:
  explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace flowlat

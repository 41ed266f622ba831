#pragma once

#include <stdexcept>
#include <string>

namespace bplan {

// Bad input: parse errors, validation failures, malformed programs.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured cap (fluent count, search nodes, atoms) was exceeded.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bplan

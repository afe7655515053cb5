#pragma once

#include <stdexcept>
#include <string>

namespace frechet {

// Input that violates a documented precondition (bad file, invalid surface, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric routine could not produce a result within its tolerance policy.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace frechet

#pragma once

#include <stdexcept>
#include <string>

namespace permlab {

// Malformed permutations, class expressions, or parameters outside their domain.
class InvalidInput : public std::runtime_error {
 public:
  explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

// An exhaustive or exponential routine was asked to run past its configured limit.
class ResourceLimit : public std::runtime_error {
 public:
  explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace permlab

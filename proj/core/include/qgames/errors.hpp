#pragma once

#include <stdexcept>
#include <string>

namespace qgames {

// Bad input: malformed documents, inconsistent dimensions, out-of-range
// parameters, non-unitary operator matrices.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical invariant broke at runtime: non-stochastic channel rows, state
// norm drift, negative probabilities beyond rounding scale.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qgames

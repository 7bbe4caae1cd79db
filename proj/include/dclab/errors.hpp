#pragma once

#include <stdexcept>
#include <string>

namespace dclab {

/// Precondition violation: argument outside the documented domain.
/// The CLI maps this class to exit code 2.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical failure: overflow, non-convergence, unreliable fit,
/// non-invertible operator.  The CLI maps this class to exit code 1.
class NumericsError : public std::runtime_error {
 public:
  explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dclab

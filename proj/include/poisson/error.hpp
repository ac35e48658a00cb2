#pragma once

#include <stdexcept>
#include <string>

namespace poisson {

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact integer/rational arithmetic exceeded its fixed capacity.
class overflow_error : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A series or quadrature produced a non-finite value or could not reach
/// the point where a result is meaningful.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operator that needs an even (odd) function was handed an odd (even) one.
class parity_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace poisson

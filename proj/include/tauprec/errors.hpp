#pragma once

#include <stdexcept>
#include <string>

namespace tauprec {

// Adaptive quadrature stopped above the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved, double requested)
      : std::runtime_error(what), achieved_error(achieved), requested_tolerance(requested) {}
  double achieved_error;
  double requested_tolerance;
};

// A factorization or iteration detected loss of positive definiteness.
class NotPositiveDefinite : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A symbol evaluated to zero on the sampling grid, so the tau operator
// built from it would be singular.
class ZeroGridSample : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense materialization requested beyond the configured cap.
class DenseCapExceeded : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// NaN/overflow or a failed internal consistency check in a numeric routine.
class NumericalFailure : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tauprec

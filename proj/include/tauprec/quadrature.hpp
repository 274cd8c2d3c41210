#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace tauprec {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t panels = 0;
  bool converged = false;
};

// Adaptive Gauss-Kronrod 7-15 integration of f over [a, b], carried out in
// long double. The interval is first split at the given interior breakpoints
// (callers pass the zeros of an oscillatory factor), then the worst panel is
// bisected until the summed error estimate drops below
// max(rel_tol*|value|, abs_tol) or the panel budget is exhausted.
QuadratureResult integrate_adaptive(const std::function<long double(long double)>& f,
                                    long double a, long double b,
                                    double rel_tol, double abs_tol,
                                    std::span<const long double> interior_breakpoints = {},
                                    std::size_t max_panels = 400000);

}  // namespace tauprec

#pragma once

#include <Eigen/Core>

#include <functional>
#include <vector>

namespace tauprec {

using LinOp = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct SolveConfig {
  double rel_tol = 1e-7;
  int max_iter = 1000;
  bool record_history = false;
};

struct SolveResult {
  Eigen::VectorXd x;
  int iterations = 0;
  std::vector<double> residual_history;  // relative residuals, one per iteration
  bool converged = false;
};

// Preconditioned conjugate gradient for symmetric positive definite A with
// preconditioner application solve_P (x = P^{-1} r). Starts from x = 0 and
// stops when ||r_j||_2 / ||r_0||_2 <= rel_tol or max_iter is reached; the
// residual is recomputed from scratch every 50 iterations to curb recurrence
// drift on long runs. Non-finite values raise NumericalFailure, signaling
// loss of positive definiteness. On max_iter exhaustion the partial result
// is returned with converged = false.
SolveResult pcg_solve(const LinOp& apply_A, const LinOp& solve_P, const Eigen::VectorXd& b,
                      const SolveConfig& cfg = {});

// Plain CG, i.e. pcg_solve with the identity preconditioner.
SolveResult cg_solve(const LinOp& apply_A, const Eigen::VectorXd& b, const SolveConfig& cfg = {});

}  // namespace tauprec

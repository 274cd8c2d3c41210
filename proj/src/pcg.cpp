#include "tauprec/pcg.hpp"

#include <cmath>
#include <stdexcept>

#include "tauprec/errors.hpp"

namespace tauprec {

SolveResult pcg_solve(const LinOp& apply_A, const LinOp& solve_P, const Eigen::VectorXd& b,
                      const SolveConfig& cfg) {
  if (!(cfg.rel_tol > 0.0) || !(cfg.rel_tol < 1.0))
    throw std::invalid_argument("pcg: rel_tol must lie in (0, 1)");
  if (cfg.max_iter < 1) throw std::invalid_argument("pcg: max_iter must be >= 1");
  const double norm_b = b.norm();
  if (!(norm_b > 0.0)) throw std::invalid_argument("pcg: right-hand side must be nonzero");

  SolveResult result;
  const auto n = b.size();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd r = b;
  Eigen::VectorXd z = solve_P(r);
  Eigen::VectorXd p = z;
  double rz = r.dot(z);

  for (int it = 1; it <= cfg.max_iter; ++it) {
    const Eigen::VectorXd Ap = apply_A(p);
    const double pAp = p.dot(Ap);
    const double alpha = rz / pAp;
    if (!std::isfinite(alpha))
      throw NumericalFailure("pcg: non-finite step; operator lost positive definiteness");
    x += alpha * p;
    if (it % 50 == 0)
      r = b - apply_A(x);
    else
      r -= alpha * Ap;
    const double relres = r.norm() / norm_b;
    if (!std::isfinite(relres)) throw NumericalFailure("pcg: non-finite residual");
    if (cfg.record_history) result.residual_history.push_back(relres);
    result.iterations = it;
    if (relres <= cfg.rel_tol) {
      result.converged = true;
      break;
    }
    z = solve_P(r);
    const double rz_next = r.dot(z);
    if (!std::isfinite(rz_next)) throw NumericalFailure("pcg: non-finite preconditioned residual");
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  result.x = std::move(x);
  return result;
}

SolveResult cg_solve(const LinOp& apply_A, const Eigen::VectorXd& b, const SolveConfig& cfg) {
  return pcg_solve(apply_A, [](const Eigen::VectorXd& r) { return r; }, b, cfg);
}

}  // namespace tauprec

#pragma once

#include <Eigen/Core>

#include "tauprec/symbols.hpp"
#include "tauprec/toeplitz.hpp"

namespace tauprec {

// Member of the tau algebra: S diag(samples^power) S with S the DST-I matrix.
// The samples are the symbol values on the grid w_i = i pi/(n+1); fractional
// and negative powers act exactly on the sample vector, which is how the
// square-root and inverse operators are realized. Apply and solve cost two
// sine transforms each.
class TauOperator {
 public:
  explicit TauOperator(Eigen::VectorXd samples, double power = 1.0);

  int size() const { return static_cast<int>(samples_.size()); }
  const Eigen::VectorXd& samples() const { return samples_; }
  double power() const { return power_; }
  // Eigenvalues of the represented matrix, i.e. samples^power in grid order.
  const Eigen::VectorXd& eigenvalues() const { return scaled_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;

  // Same samples with the power multiplied by the given factor
  // (fractional(0.5) is the operator square root).
  TauOperator fractional(double factor) const { return TauOperator(samples_, power_ * factor); }

  Eigen::MatrixXd dense(int cap = kDefaultDenseCap) const;

 private:
  Eigen::VectorXd samples_;
  double power_;
  Eigen::VectorXd scaled_;  // samples^power
};

// tau_n(f)^power, eigenvalues sampled from the symbol on the sine grid.
TauOperator build_tau(const Symbol& s, int n, double power = 1.0);

}  // namespace tauprec

#include "tauprec/tau.hpp"

#include <cmath>
#include <stdexcept>

#include "tauprec/errors.hpp"
#include "tauprec/transforms.hpp"

namespace tauprec {

TauOperator::TauOperator(Eigen::VectorXd samples, double power)
    : samples_(std::move(samples)), power_(power) {
  const int n = static_cast<int>(samples_.size());
  if (n < 1) throw std::invalid_argument("TauOperator: empty sample vector");
  for (int i = 0; i < n; ++i)
    if (!(samples_[i] > 0.0))
      throw NotPositiveDefinite("TauOperator: sample " + std::to_string(i) + " is not positive");
  scaled_.resize(n);
  if (power_ == 1.0) {
    scaled_ = samples_;
  } else if (power_ == -1.0) {
    scaled_ = samples_.cwiseInverse();
  } else {
    for (int i = 0; i < n; ++i) scaled_[i] = std::pow(samples_[i], power_);
  }
}

Eigen::VectorXd TauOperator::apply(const Eigen::VectorXd& x) const {
  if (x.size() != size()) throw DimensionMismatch("tau apply: vector length mismatch");
  Eigen::VectorXd u = dst1(x);
  u.array() *= scaled_.array();
  return dst1(u);
}

Eigen::VectorXd TauOperator::solve(const Eigen::VectorXd& b) const {
  if (b.size() != size()) throw DimensionMismatch("tau solve: vector length mismatch");
  Eigen::VectorXd u = dst1(b);
  u.array() /= scaled_.array();
  return dst1(u);
}

Eigen::MatrixXd TauOperator::dense(int cap) const {
  const int n = size();
  if (n > cap)
    throw DenseCapExceeded("tau dense: n=" + std::to_string(n) + " exceeds cap " +
                           std::to_string(cap));
  Eigen::MatrixXd M(n, n);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    M.col(j) = apply(e);
    e[j] = 0.0;
  }
  // The represented matrix is symmetric; average out transform roundoff.
  M = 0.5 * (M + M.transpose()).eval();
  return M;
}

TauOperator build_tau(const Symbol& s, int n, double power) {
  return TauOperator(grid_samples(s, n), power);
}

}  // namespace tauprec

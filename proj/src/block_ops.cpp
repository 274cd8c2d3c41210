#include "tauprec/block_ops.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

#include "tauprec/errors.hpp"

namespace tauprec {

BlockSymbol::BlockSymbol(Symbol f1_, Symbol f2_, Symbol f3_, Symbol f4_)
    : f1(std::move(f1_)), f2(std::move(f2_)), f3(std::move(f3_)), f4(std::move(f4_)) {
  if (f2.key() != f3.key())
    throw std::invalid_argument("BlockSymbol: off-diagonal symbols must coincide (symmetric F)");
}

BlockSymbol mean_block_symbol(double theta1, double theta2) {
  const Symbol mid = Symbol::abs_pow(0.5 * (theta1 + theta2));
  return BlockSymbol(Symbol::abs_pow(theta1), mid, mid, Symbol::abs_pow(theta2));
}

bool pointwise_psd(const BlockSymbol& F, int grid_points, double tol) {
  if (grid_points < 2) throw std::invalid_argument("pointwise_psd: need at least two grid points");
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < grid_points; ++i) {
    const double t = pi * i / (grid_points - 1);
    const double a = F.f1(t), b = F.f2(t), d = F.f4(t);
    // Rounding slack: the determinant is identically zero for the
    // mean-exponent symbols, so exact comparisons would flip on noise.
    const double slack = tol + 1e-13 * (std::abs(a * d) + b * b + std::abs(a) + 1.0);
    if (a < -slack) return false;
    if (a * d - b * b < -slack) return false;
  }
  return true;
}

Eigen::MatrixXd BlockToeplitz::dense(int cap) const {
  if (2 * n > cap)
    throw DenseCapExceeded("block dense: 2n=" + std::to_string(2 * n) + " exceeds cap " +
                           std::to_string(cap));
  Eigen::MatrixXd M(2 * n, 2 * n);
  M.topLeftCorner(n, n) = t11.dense(cap);
  M.topRightCorner(n, n) = t12.dense(cap);
  M.bottomLeftCorner(n, n) = t21.dense(cap);
  M.bottomRightCorner(n, n) = t22.dense(cap);
  return M;
}

BlockToeplitz build_block(const BlockSymbol& F, int n) {
  if (n < 1) throw std::invalid_argument("build_block: n must be >= 1");
  return BlockToeplitz{n, build_toeplitz(F.f1, n), build_toeplitz(F.f2, n),
                       build_toeplitz(F.f3, n), build_toeplitz(F.f4, n)};
}

Eigen::MatrixXd interleave_permute(const BlockToeplitz& B, int cap) {
  const int n = B.n;
  const Eigen::MatrixXd M = B.dense(cap);
  Eigen::MatrixXd P(2 * n, 2 * n);
  auto target = [n](int block_index) {
    const int s = block_index / n;  // which block
    const int j = block_index % n;  // position within the block
    return 2 * j + s;
  };
  for (int i = 0; i < 2 * n; ++i)
    for (int j = 0; j < 2 * n; ++j) P(target(i), target(j)) = M(i, j);
  return P;
}

Eigen::MatrixXd schur_complement(const BlockToeplitz& B, int cap) {
  const int n = B.n;
  if (n > cap)
    throw DenseCapExceeded("schur: n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  const Eigen::MatrixXd A = B.t11.dense(cap);
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite("schur: top-left block is not positive definite");
  return B.t22.dense(cap) - B.t21.dense(cap) * llt.solve(B.t12.dense(cap));
}

bool is_psd(const Eigen::MatrixXd& M, double tol) {
  if (M.rows() != M.cols()) throw std::invalid_argument("is_psd: matrix must be square");
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff() * static_cast<double>(M.rows()));
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("is_psd: matrix is not symmetric");
  if (tol < 0.0) tol = 1e-10 * scale;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

}  // namespace tauprec

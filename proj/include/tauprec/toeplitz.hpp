#pragma once

#include <Eigen/Core>

#include <optional>

#include "tauprec/symbols.hpp"

namespace tauprec {

// Dense materialization cap shared by the modules that form n x n matrices
// for eigenvalue work. The experiment tables stop at n = 4096.
inline constexpr int kDefaultDenseCap = 4096;

// Symmetric Toeplitz matrix T given by its first column a_0..a_{n-1}:
// entry (j, k) = a_|j-k|. Matrix-vector products run in O(n log n) through
// a circulant embedding of size 2n whose spectrum is precomputed.
class ToeplitzOperator {
 public:
  explicit ToeplitzOperator(Eigen::VectorXd first_column,
                            std::optional<int> bandwidth = std::nullopt);

  int size() const { return static_cast<int>(col_.size()); }
  const Eigen::VectorXd& first_column() const { return col_; }
  std::optional<int> bandwidth() const { return bandwidth_; }
  double entry(int i, int j) const { return col_[std::abs(i - j)]; }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd dense(int cap = kDefaultDenseCap) const;

 private:
  Eigen::VectorXd col_;
  std::optional<int> bandwidth_;
  Eigen::VectorXcd embedding_spectrum_;  // FFT of the 2n circulant column
};

// T_n(f): first column from the symbol's Fourier coefficients. The bandwidth
// is recorded when the symbol is a trigonometric polynomial.
ToeplitzOperator build_toeplitz(const Symbol& s, int n);

// Cholesky factorization of a symmetric positive definite banded Toeplitz
// matrix, O(n k^2). Factors once, solves many; used as the band comparator
// preconditioner. Throws NotPositiveDefinite on a non-positive pivot.
class BandedCholesky {
 public:
  explicit BandedCholesky(const ToeplitzOperator& T);
  int size() const { return n_; }
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;

 private:
  int n_, k_;
  Eigen::VectorXd col_;      // first column of T, for the refinement residual
  Eigen::MatrixXd factor_;   // band storage: factor_(d, j) = L(j+d, j), d = 0..k
};

// One-shot banded solve with x satisfying T x ~= b.
Eigen::VectorXd band_solve(const ToeplitzOperator& T, const Eigen::VectorXd& b);

}  // namespace tauprec

#pragma once

#include <Eigen/Core>

#include "tauprec/symbols.hpp"
#include "tauprec/toeplitz.hpp"

namespace tauprec {

// 2x2 matrix-valued symbol F(t) = [[f1, f2], [f3, f4]]; all uses here are
// symmetric, so construction requires f2 and f3 to be the same symbol.
struct BlockSymbol {
  BlockSymbol(Symbol f1, Symbol f2, Symbol f3, Symbol f4);
  Symbol f1, f2, f3, f4;
};

// [[|t|^t1, |t|^th], [|t|^th, |t|^t2]] with th the arithmetic mean of the
// exponents; pointwise positive semidefinite since th = (t1 + t2)/2.
BlockSymbol mean_block_symbol(double theta1, double theta2);

// Pointwise PSD check of the symbol on a uniform grid over [0, pi]
// (entries are even): f1 >= 0 and det F >= 0 at every grid point.
bool pointwise_psd(const BlockSymbol& F, int grid_points = 10000, double tol = 0.0);

// Block Toeplitz matrix [[T(f1), T(f2)], [T(f3), T(f4)]] of total size 2n.
struct BlockToeplitz {
  int n;
  ToeplitzOperator t11, t12, t21, t22;
  Eigen::MatrixXd dense(int cap = kDefaultDenseCap) const;
};

BlockToeplitz build_block(const BlockSymbol& F, int n);

// Pi * B * Pi^T where Pi interleaves the two blocks: block index s*n + j
// maps to 2j + s. The result is the Toeplitz matrix with 2x2 symbol blocks
// along the diagonals; the permutation similarity preserves the spectrum.
Eigen::MatrixXd interleave_permute(const BlockToeplitz& B, int cap = kDefaultDenseCap);

// Schur complement T(f4) - T(f3) T(f1)^{-1} T(f2), computed densely through
// a Cholesky solve of the top-left block. Serves as a PSD test oracle, so
// the cap is deliberately small.
Eigen::MatrixXd schur_complement(const BlockToeplitz& B, int cap = 512);

// True iff the symmetric matrix M has min eigenvalue >= -tol. Pass tol < 0
// to use the default 1e-10 scaled by the matrix norm. Throws on an
// asymmetric input (tolerance 1e-12 relative to the norm).
bool is_psd(const Eigen::MatrixXd& M, double tol = -1.0);

}  // namespace tauprec

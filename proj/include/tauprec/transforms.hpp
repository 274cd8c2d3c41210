#pragma once

#include <Eigen/Core>

namespace tauprec {

// Type-I discrete sine transform y = S x with
//   S(i, j) = sqrt(2/(n+1)) * sin((i+1)(j+1) pi/(n+1)),   0-based i, j.
// S is symmetric, orthogonal and involutory (S*S = I), so dst1 is its own
// inverse. Runs in O(n log n) for arbitrary n; internal arithmetic is long
// double so repeated transforms stay well below double rounding.
Eigen::VectorXd dst1(const Eigen::VectorXd& x);

// In-place long double variant used when a whole matrix is transformed
// without intermediate rounding to double.
void dst1_inplace(long double* data, int n);

// Half-complex spectrum of a real vector of length m (result has m/2+1
// entries). Inverse includes the 1/m normalization.
Eigen::VectorXcd real_fft(const Eigen::VectorXd& x);
Eigen::VectorXd real_ifft(const Eigen::VectorXcd& spectrum, int m);

}  // namespace tauprec

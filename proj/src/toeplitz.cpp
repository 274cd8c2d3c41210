#include "tauprec/toeplitz.hpp"

#include <cmath>
#include <stdexcept>

#include "tauprec/errors.hpp"
#include "tauprec/transforms.hpp"

namespace tauprec {

ToeplitzOperator::ToeplitzOperator(Eigen::VectorXd first_column, std::optional<int> bandwidth)
    : col_(std::move(first_column)), bandwidth_(bandwidth) {
  const int n = static_cast<int>(col_.size());
  if (n < 1) throw std::invalid_argument("ToeplitzOperator: empty first column");
  if (bandwidth_ && (*bandwidth_ < 0)) throw std::invalid_argument("ToeplitzOperator: bad bandwidth");
  // Circulant column of size 2n: a_0..a_{n-1}, one zero pad, a_{n-1}..a_1.
  Eigen::VectorXd c(2 * n);
  c.setZero();
  for (int i = 0; i < n; ++i) c[i] = col_[i];
  for (int i = 1; i < n; ++i) c[2 * n - i] = col_[i];
  embedding_spectrum_ = real_fft(c);
}

Eigen::VectorXd ToeplitzOperator::apply(const Eigen::VectorXd& x) const {
  const int n = size();
  if (x.size() != n) throw DimensionMismatch("toeplitz apply: vector length mismatch");
  Eigen::VectorXd padded(2 * n);
  padded.setZero();
  padded.head(n) = x;
  Eigen::VectorXcd z = real_fft(padded);
  z.array() *= embedding_spectrum_.array();
  return real_ifft(z, 2 * n).head(n);
}

Eigen::MatrixXd ToeplitzOperator::dense(int cap) const {
  const int n = size();
  if (n > cap)
    throw DenseCapExceeded("toeplitz dense: n=" + std::to_string(n) + " exceeds cap " +
                           std::to_string(cap));
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = col_[std::abs(i - j)];
  return M;
}

ToeplitzOperator build_toeplitz(const Symbol& s, int n) {
  if (n < 1) throw std::invalid_argument("build_toeplitz: n must be >= 1");
  std::optional<int> band;
  if (s.is_polynomial()) band = s.bandwidth();
  return ToeplitzOperator(fourier_coeffs(s, n), band);
}

BandedCholesky::BandedCholesky(const ToeplitzOperator& T) : n_(T.size()), col_(T.first_column()) {
  if (!T.bandwidth()) throw std::invalid_argument("BandedCholesky: operator has no bandwidth");
  k_ = std::min(*T.bandwidth(), n_ - 1);
  factor_.setZero(k_ + 1, n_);
  for (int j = 0; j < n_; ++j) {
    double diag = col_[0];
    for (int m = std::max(0, j - k_); m < j; ++m) diag -= factor_(j - m, m) * factor_(j - m, m);
    if (!(diag > 0.0))
      throw NotPositiveDefinite("BandedCholesky: non-positive pivot at column " + std::to_string(j));
    factor_(0, j) = std::sqrt(diag);
    for (int i = j + 1; i <= std::min(j + k_, n_ - 1); ++i) {
      double s = (i - j <= k_) ? col_[i - j] : 0.0;
      for (int m = std::max(0, i - k_); m < j; ++m) s -= factor_(i - m, m) * factor_(j - m, m);
      factor_(i - j, j) = s / factor_(0, j);
    }
  }
}

namespace {

Eigen::VectorXd band_toeplitz_multiply(const Eigen::VectorXd& col, int k,
                                       const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    double s = col[0] * x[i];
    for (int d = 1; d <= k; ++d) {
      if (i - d >= 0) s += col[d] * x[i - d];
      if (i + d < n) s += col[d] * x[i + d];
    }
    y[i] = s;
  }
  return y;
}

}  // namespace

Eigen::VectorXd BandedCholesky::solve(const Eigen::VectorXd& b) const {
  if (b.size() != n_) throw DimensionMismatch("band solve: vector length mismatch");
  auto substitute = [&](const Eigen::VectorXd& rhs) {
    Eigen::VectorXd y(n_);
    for (int i = 0; i < n_; ++i) {
      double s = rhs[i];
      for (int d = 1; d <= std::min(k_, i); ++d) s -= factor_(d, i - d) * y[i - d];
      y[i] = s / factor_(0, i);
    }
    Eigen::VectorXd x(n_);
    for (int i = n_ - 1; i >= 0; --i) {
      double s = y[i];
      for (int d = 1; d <= std::min(k_, n_ - 1 - i); ++d) s -= factor_(d, i) * x[i + d];
      x[i] = s / factor_(0, i);
    }
    return x;
  };
  Eigen::VectorXd x = substitute(b);
  // One refinement pass; the residual uses the exact banded product.
  Eigen::VectorXd r = b - band_toeplitz_multiply(col_, k_, x);
  x += substitute(r);
  return x;
}

Eigen::VectorXd band_solve(const ToeplitzOperator& T, const Eigen::VectorXd& b) {
  return BandedCholesky(T).solve(b);
}

}  // namespace tauprec

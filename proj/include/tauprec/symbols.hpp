#pragma once

#include <Eigen/Core>

#include <memory>
#include <string>
#include <vector>

namespace tauprec {

// An even, nonnegative generating function on [-pi, pi] with a single zero
// at t = 0 of known order. Built from |t|^theta and (2 - 2 cos t)^k atoms,
// closed under products and positive scalar multiples. Immutable and cheap
// to copy; safe to share across threads.
class Symbol {
 public:
  // |t|^theta. theta = 0 is the constant 1.
  static Symbol abs_pow(double theta);
  // (2 - 2 cos t)^k, the k-th power of the discrete Laplacian symbol.
  static Symbol laplace_pow(int k);
  // The zero function; usable as an off-diagonal block entry but not as a
  // preconditioner symbol (grid_samples rejects it).
  static Symbol zero();

  double operator()(double t) const;
  double zero_order() const;

  // True when the symbol is a trigonometric polynomial, in which case its
  // cosine coefficients a_0..a_bandwidth are exact.
  bool is_polynomial() const;
  int bandwidth() const;
  std::vector<double> cosine_coefficients() const;

  // Canonical structural key; used for coefficient caching.
  const std::string& key() const;

  friend Symbol operator*(const Symbol& a, const Symbol& b);
  friend Symbol operator*(double c, const Symbol& s);
  friend double fourier_coeff(const Symbol& s, long l);
  friend Eigen::VectorXd fourier_coeffs(const Symbol& s, int n);

  struct Node;

 private:
  explicit Symbol(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

// l-th Fourier coefficient a_l = (1/2pi) Int_{-pi}^{pi} f(t) e^{-ilt} dt.
// The symbol is even so a_l is real and a_{-l} = a_l. Closed forms are used
// for polynomial symbols and for |t|^theta at l = 0; |t|^theta with theta > 2
// reduces exactly to the theta - 2 case by integration by parts; everything
// else is adaptive quadrature on [0, pi] with the cosine weight. Throws
// QuadratureError when the requested accuracy is not reached.
double fourier_coeff(const Symbol& s, long l);

// First n coefficients a_0..a_{n-1}. Results are cached per symbol and
// extended monotonically, so sweeping sizes over the same symbol reuses all
// earlier work.
Eigen::VectorXd fourier_coeffs(const Symbol& s, int n);

// Samples f(w_i) on the grid w_i = i pi/(n+1), i = 1..n. All entries are
// strictly positive whenever the symbol's only zero is at t = 0; a zero
// sample throws ZeroGridSample since the tau operator built from it would
// not be invertible.
Eigen::VectorXd grid_samples(const Symbol& s, int n);

}  // namespace tauprec

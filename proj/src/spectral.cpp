#include "tauprec/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "tauprec/errors.hpp"
#include "tauprec/pcg.hpp"
#include "tauprec/quadrature.hpp"
#include "tauprec/transforms.hpp"

namespace tauprec {

namespace {
constexpr long double kPi = 3.14159265358979323846264338327950288L;
using MatrixXld = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
}  // namespace

Eigen::VectorXd preconditioned_spectrum(const ToeplitzOperator& T, const TauOperator& P,
                                        int dense_cap) {
  const int n = T.size();
  if (P.size() != n) throw DimensionMismatch("preconditioned_spectrum: size mismatch");
  if (n > dense_cap)
    throw DenseCapExceeded("preconditioned_spectrum: n=" + std::to_string(n) + " exceeds cap " +
                           std::to_string(dense_cap));

  // B = S T S in long double, then the exact diagonal congruence
  // M = D^{-1/2} B D^{-1/2}. M is similar to P^{-1} T through S and D^{1/2}.
  MatrixXld B(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) B(i, j) = static_cast<long double>(T.entry(i, j));
  std::vector<long double> buf(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) buf[i] = B(i, j);
    dst1_inplace(buf.data(), n);
    for (int i = 0; i < n; ++i) B(i, j) = buf[i];
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) buf[j] = B(i, j);
    dst1_inplace(buf.data(), n);
    for (int j = 0; j < n; ++j) B(i, j) = buf[j];
  }
  const Eigen::VectorXd& d = P.eigenvalues();
  std::vector<long double> inv_sqrt(n);
  for (int i = 0; i < n; ++i) inv_sqrt[i] = 1.0L / sqrtl(static_cast<long double>(d[i]));
  Eigen::MatrixXd M(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      M(i, j) = static_cast<double>(B(i, j) * inv_sqrt[i] * inv_sqrt[j]);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalFailure("preconditioned_spectrum: eigensolver failed");
  return es.eigenvalues();
}

int outlier_count(const Eigen::VectorXd& sorted_eigs, double threshold) {
  int count = 0;
  for (int i = static_cast<int>(sorted_eigs.size()) - 1; i >= 0; --i) {
    if (sorted_eigs[i] > threshold)
      ++count;
    else
      break;
  }
  return count;
}

SpectralReport spectral_report(double theta, int n, double threshold, int dense_cap) {
  const Symbol f = Symbol::abs_pow(theta);
  const ToeplitzOperator T = build_toeplitz(f, n);
  const TauOperator P = build_tau(f, n);
  SpectralReport rep;
  rep.n = n;
  rep.theta = theta;
  rep.threshold = threshold;
  rep.eigenvalues = preconditioned_spectrum(T, P, dense_cap);
  rep.lambda_min = rep.eigenvalues[0];
  rep.lambda_max = rep.eigenvalues[n - 1];
  rep.outliers_above = outlier_count(rep.eigenvalues, threshold);
  const double lo = 0.9, hi = 1.1;
  int inside = 0;
  for (int i = 0; i < n; ++i)
    if (rep.eigenvalues[i] >= lo && rep.eigenvalues[i] <= hi) ++inside;
  rep.cluster_fraction = static_cast<double>(inside) / n;
  return rep;
}

namespace detail {

double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Deterministic Box-Muller normal; std::normal_distribution is
// implementation-defined and would break cross-platform reproducibility.
Eigen::VectorXd random_unit_vector(int n, std::mt19937_64& gen) {
  Eigen::VectorXd z(n);
  for (int i = 0; i < n; ++i) {
    double u1 = 0.0;
    while (u1 == 0.0) u1 = uniform01(gen);
    const double u2 = uniform01(gen);
    z[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }
  z.normalize();
  return z;
}

}  // namespace detail

double rayleigh_lower_diag(double theta, int n, int trials, unsigned seed) {
  if (trials < 1) throw std::invalid_argument("rayleigh_lower_diag: trials must be >= 1");
  const Symbol f = Symbol::abs_pow(theta);
  const ToeplitzOperator T = build_toeplitz(f, n);
  const TauOperator P = build_tau(f, n);
  std::mt19937_64 gen(seed);
  double min_ratio = std::numeric_limits<double>::infinity();
  const int identity_checks = std::min(trials, 3);
  for (int trial = 0; trial < trials; ++trial) {
    const Eigen::VectorXd z = detail::random_unit_vector(n, gen);
    const double numerator = z.dot(T.apply(z));
    const double denominator = z.dot(P.apply(z));
    min_ratio = std::min(min_ratio, numerator / denominator);

    if (trial < identity_checks) {
      // Split the numerator by cos(a-b) = cos a cos b + sin a sin b:
      //   z^T T z = (1/pi) Int_0^pi t^theta [ (sum_j z_j cos(jt))^2
      //                                     + (sum_j z_j sin(jt))^2 ] dt.
      auto trig_sum_sq = [&z, n, theta](bool use_sin) {
        return [&z, n, theta, use_sin](long double t) {
          // Evaluate sum_j z_j trig(j t) by the angle-addition recurrence.
          const long double c1 = cosl(t), s1 = sinl(t);
          long double c = c1, s = s1, acc = 0.0L;
          for (int j = 1; j <= n; ++j) {
            acc += static_cast<long double>(z[j - 1]) * (use_sin ? s : c);
            const long double c_next = c * c1 - s * s1;
            s = s * c1 + c * s1;
            c = c_next;
          }
          return powl(t, static_cast<long double>(theta)) * acc * acc;
        };
      };
      std::vector<long double> breaks;
      const int panels = 2 * (n + 1);
      breaks.reserve(panels - 1);
      for (int i = 1; i < panels; ++i) breaks.push_back(kPi * i / panels);
      const QuadratureResult c_term =
          integrate_adaptive(trig_sum_sq(false), 0.0L, kPi, 1e-11, 1e-13, breaks);
      const QuadratureResult s_term =
          integrate_adaptive(trig_sum_sq(true), 0.0L, kPi, 1e-11, 1e-13, breaks);
      const double split = (c_term.value + s_term.value) / static_cast<double>(kPi);
      if (std::abs(split - numerator) > 1e-8 * std::abs(numerator))
        throw NumericalFailure("rayleigh_lower_diag: C + S split disagrees with z^T T z");
    }
  }
  return min_ratio;
}

ExtremeEigs extreme_preconditioned_eigs(const ToeplitzOperator& T, const TauOperator& P,
                                        int max_iters, double tol) {
  const int n = T.size();
  if (P.size() != n) throw DimensionMismatch("extreme_preconditioned_eigs: size mismatch");
  const TauOperator half_inv = P.fractional(-0.5);
  auto apply_M = [&](const Eigen::VectorXd& x) { return half_inv.apply(T.apply(half_inv.apply(x))); };

  std::mt19937_64 gen(12345);
  Eigen::VectorXd v = detail::random_unit_vector(n, gen);
  double lambda_max = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    Eigen::VectorXd w = apply_M(v);
    const double next = v.dot(w);
    w.normalize();
    const bool settled = std::abs(next - lambda_max) <= tol * std::abs(next);
    lambda_max = next;
    v = w;
    if (settled && it > 2) break;
  }

  // Inverse iteration; the preconditioned operator is mildly conditioned, so
  // plain CG inner solves converge quickly.
  Eigen::VectorXd u = detail::random_unit_vector(n, gen);
  double lambda_min = 0.0;
  SolveConfig inner;
  inner.rel_tol = 1e-10;
  inner.max_iter = 2000;
  for (int it = 0; it < max_iters; ++it) {
    const SolveResult sol = cg_solve(apply_M, u, inner);
    Eigen::VectorXd w = sol.x;
    const double rayleigh = u.dot(apply_M(u));
    w.normalize();
    const bool settled = std::abs(rayleigh - lambda_min) <= tol * std::abs(rayleigh);
    lambda_min = rayleigh;
    u = w;
    if (settled && it > 2) break;
  }
  return ExtremeEigs{lambda_min, lambda_max, true};
}

}  // namespace tauprec

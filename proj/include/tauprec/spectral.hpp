#pragma once

#include <Eigen/Core>

#include "tauprec/tau.hpp"
#include "tauprec/toeplitz.hpp"

namespace tauprec {

// Spectrum of the preconditioned matrix P^{-1} T together with the derived
// statistics reported by the experiment tables.
struct SpectralReport {
  int n = 0;
  double theta = 0.0;
  Eigen::VectorXd eigenvalues;  // ascending
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double threshold = 2.0;
  int outliers_above = 0;       // eigenvalues strictly greater than threshold
  double cluster_fraction = 0;  // fraction inside [0.9, 1.1]
};

// Eigenvalues of P^{-1/2} T P^{-1/2} (similar to P^{-1} T), sorted
// ascending. The tau square root is exact in sample space, and the congruent
// form D^{-1/2} (S T S) D^{-1/2} is assembled with long double sine
// transforms so the severe cancellation in the low-frequency corner does not
// poison the small entries. Dense eigensolve, so n is capped.
Eigen::VectorXd preconditioned_spectrum(const ToeplitzOperator& T, const TauOperator& P,
                                        int dense_cap = kDefaultDenseCap);

// Count of entries strictly greater than the threshold (input sorted).
int outlier_count(const Eigen::VectorXd& sorted_eigs, double threshold);

// Full report for T_n(|t|^theta) preconditioned by tau_n(|t|^theta).
SpectralReport spectral_report(double theta, int n, double threshold = 2.0,
                               int dense_cap = kDefaultDenseCap);

// Minimum Rayleigh ratio z^T T z / z^T P z over `trials` seeded random unit
// vectors for the |t|^theta pair; a lower-bound diagnostic for the smallest
// preconditioned eigenvalue. For the first few vectors the numerator is also
// recomputed by quadrature as the cosine-part plus sine-part split and
// checked against z^T T z to 1e-8 relative (throws NumericalFailure if the
// identity fails).
double rayleigh_lower_diag(double theta, int n, int trials, unsigned seed = 0);

// Iterative estimates for use above the dense cap: power iteration for the
// largest eigenvalue and an inverse iteration (inner CG solves) for the
// smallest one, both on the symmetrized operator. Flagged approximate.
struct ExtremeEigs {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  bool approximate = true;
};
ExtremeEigs extreme_preconditioned_eigs(const ToeplitzOperator& T, const TauOperator& P,
                                        int max_iters = 300, double tol = 1e-9);

}  // namespace tauprec

#pragma once

#include <Eigen/Core>

#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tauprec/tau.hpp"
#include "tauprec/toeplitz.hpp"

namespace tauprec {

// Extremes of |t|^{2k} / (2 - 2 cos t)^k over [-pi, pi] with the removable
// limit 1 at t = 0: the interval containing the generalized spectrum of the
// band step against the Toeplitz matrix it preconditions.
struct EquivBounds {
  double lower;  // r
  double upper;  // R
};
EquivBounds equiv_bounds(int k);

// Interval and outlier budget measured for one consecutive pair of chain
// operators: the generalized spectrum of the pair lies in [alpha, beta] up
// to the declared outliers below/above.
struct ChainLink {
  std::string pair;  // label, e.g. "P1<-P0"
  double alpha = 1.0;
  double beta = 1.0;
  int outliers_below = 0;
  int outliers_above = 0;
};

// Composition rule: intervals multiply, outlier counts add.
struct ChainBudget {
  double alpha = 1.0;
  double beta = 1.0;
  int r_minus = 0;
  int r_plus = 0;
};
ChainBudget compose_budget(std::span<const ChainLink> links);

// One operator in the multi-step chain. The middle step is the product of a
// tau matrix and a Toeplitz matrix; it is not symmetric, but it is similar
// to the SPD matrix tau^{1/2} T tau^{1/2}, which is the representative used
// for all spectral work.
class ChainOperator {
 public:
  explicit ChainOperator(ToeplitzOperator T, std::string description);
  explicit ChainOperator(TauOperator P, std::string description);
  ChainOperator(TauOperator left, ToeplitzOperator right, std::string description);

  const std::string& description() const { return description_; }
  int size() const;
  bool is_product() const;
  // SPD representative, dense.
  Eigen::MatrixXd dense_spd(int cap = kDefaultDenseCap) const;
  // Raw matrix (for the product step this is the nonsymmetric tau * T).
  Eigen::MatrixXd dense_raw(int cap = kDefaultDenseCap) const;

 private:
  struct Product {
    TauOperator left;
    ToeplitzOperator right;
  };
  std::variant<ToeplitzOperator, TauOperator, Product> op_;
  std::string description_;
};

// The five-step preconditioning chain for theta = 2k + r, k >= 1, r in
// [0, 2):
//   P0 = T(|t|^theta)
//   P1 = T((2-2cos t)^k |t|^r)
//   P2 = tau((2-2cos t)^k) * T(|t|^r)
//   P3 = tau((2-2cos t)^k |t|^r)
//   P4 = tau(|t|^theta)
struct ThetaChain {
  double theta;
  int k;
  double r;
  std::vector<ChainOperator> ops;  // size 5
};
ThetaChain build_theta_chain(double theta, int n);

struct ChainReport {
  double theta = 0.0;
  int n = 0;
  int k = 0;
  double r = 0.0;
  std::vector<ChainLink> links;       // one per consecutive pair
  ChainBudget budget;                 // composed over the links
  double direct_min = 0.0;            // spectrum of P4^{-1} P0
  double direct_max = 0.0;
  int direct_below_alpha = 0;
  int direct_above_beta = 0;
  int direct_above_threshold = 0;     // eigenvalues > 2, the tables' statistic
  bool pass = false;
};

// Measures every consecutive link of the theta chain (generalized spectra of
// SPD representatives), declares outliers from the rank of P1 - tau*T for
// the one essentially-equivalent link, composes the budget, and checks the
// directly computed spectrum of P4^{-1} P0 against it: at most r_minus
// eigenvalues below alpha and r_plus above beta (with 1e-8 relative slack).
// A budget violation is reported through pass = false.
ChainReport verify_chain(double theta, int n, int dense_cap = kDefaultDenseCap);

}  // namespace tauprec

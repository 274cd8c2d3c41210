#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <vector>

#include "tauprec/chain.hpp"
#include "tauprec/errors.hpp"
#include "tauprec/spectral.hpp"

using tauprec::ChainBudget;
using tauprec::ChainLink;
using tauprec::ChainReport;
using tauprec::EquivBounds;
using tauprec::Symbol;
using tauprec::ThetaChain;
using tauprec::build_tau;
using tauprec::build_theta_chain;
using tauprec::build_toeplitz;
using tauprec::compose_budget;
using tauprec::equiv_bounds;
using tauprec::verify_chain;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("theta decomposition") {
  const ThetaChain c3 = build_theta_chain(3.0, 8);
  CHECK(c3.k == 1);
  CHECK(c3.r == 1.0);
  CHECK(c3.ops.size() == 5);
  CHECK(c3.ops[2].is_product());

  CHECK(build_theta_chain(4.0, 8).k == 2);
  CHECK(build_theta_chain(4.0, 8).r == 0.0);
  CHECK(build_theta_chain(4.5, 8).k == 2);
  CHECK(build_theta_chain(4.5, 8).r == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(build_theta_chain(2.0001, 8).k == 1);
  CHECK(build_theta_chain(2.0001, 8).r == doctest::Approx(0.0001).epsilon(1e-10));

  CHECK_THROWS_AS(build_theta_chain(2.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(build_theta_chain(1.5, 8), std::invalid_argument);
}

TEST_CASE("equivalence bounds of the band step") {
  for (int k : {1, 2, 3}) {
    const EquivBounds b = equiv_bounds(k);
    const double upper = std::pow(kPi * kPi / 4.0, k);
    CHECK(std::abs(b.lower - 1.0) <= 1e-10);
    CHECK(std::abs(b.upper - upper) <= 1e-10 * upper);
  }
  CHECK_THROWS_AS(equiv_bounds(0), std::invalid_argument);
}

TEST_CASE("budget composition") {
  const ChainLink single{"a", 2.0, 3.0, 0, 1};
  const ChainBudget b1 = compose_budget(std::vector<ChainLink>{single});
  CHECK(b1.alpha == 2.0);
  CHECK(b1.beta == 3.0);
  CHECK(b1.r_minus == 0);
  CHECK(b1.r_plus == 1);

  const std::vector<ChainLink> two = {{"a", 1.0, 2.0, 0, 0}, {"b", 0.5, 4.0, 1, 2}};
  const ChainBudget b2 = compose_budget(two);
  CHECK(b2.alpha == 0.5);
  CHECK(b2.beta == 8.0);
  CHECK(b2.r_minus == 1);
  CHECK(b2.r_plus == 2);

  CHECK_THROWS_AS(compose_budget(std::vector<ChainLink>{}), std::invalid_argument);
  CHECK_THROWS_AS(compose_budget(std::vector<ChainLink>{{"bad", 3.0, 2.0, 0, 0}}),
                  std::invalid_argument);
}

TEST_CASE("budget composition is associative") {
  // dyadic interval endpoints make the products exact in floating point
  const std::vector<ChainLink> links = {
      {"a", 0.5, 2.0, 1, 0}, {"b", 0.25, 4.0, 0, 2}, {"c", 1.0, 8.0, 3, 1}, {"d", 0.5, 1.0, 0, 0}};
  const ChainBudget all = compose_budget(links);
  const ChainBudget prefix = compose_budget(std::span(links).first(2));
  const ChainBudget suffix = compose_budget(std::span(links).last(2));
  const std::vector<ChainLink> glued = {
      {"p", prefix.alpha, prefix.beta, prefix.r_minus, prefix.r_plus},
      {"s", suffix.alpha, suffix.beta, suffix.r_minus, suffix.r_plus}};
  const ChainBudget recomposed = compose_budget(glued);
  CHECK(recomposed.alpha == all.alpha);
  CHECK(recomposed.beta == all.beta);
  CHECK(recomposed.r_minus == all.r_minus);
  CHECK(recomposed.r_plus == all.r_plus);
}

TEST_CASE("verification passes and counts the observed outliers") {
  const ChainReport r3 = verify_chain(3.0, 128);
  CHECK(r3.pass);
  CHECK(r3.direct_above_threshold == 2);
  CHECK(r3.links.size() == 4);

  const ChainReport r45 = verify_chain(4.5, 128);
  CHECK(r45.pass);
  CHECK(r45.direct_above_threshold == 2);

  // near-degenerate split: k = 1, r ~ 0
  const ChainReport tiny = verify_chain(2.0001, 64);
  CHECK(tiny.pass);
}

TEST_CASE("per-link structure matches the theory") {
  for (double theta : {2.5, 3.0, 3.5, 4.5}) {
    for (int n : {64, 128}) {
      const ChainReport r = verify_chain(theta, n);
      const EquivBounds b = equiv_bounds(r.k);
      // band step: spectrally equivalent with the closed-interval bounds
      CHECK(r.links[0].alpha >= b.lower - 1e-8);
      CHECK(r.links[0].beta <= b.upper + 1e-8);
      CHECK(r.links[0].outliers_below == 0);
      CHECK(r.links[0].outliers_above == 0);
      // splitting step: outlier budget proportional to k (c = 4, fixed from
      // the corner-correction rank measured at small n)
      CHECK(r.links[1].outliers_below + r.links[1].outliers_above <= 4 * r.k);
      // closing tau step: reciprocal interval of the band step
      CHECK(r.links[3].alpha >= 1.0 / b.upper - 1e-8);
      CHECK(r.links[3].beta <= 1.0 / b.lower + 1e-8);
    }
  }
}

TEST_CASE("the product step is similar to its SPD representative") {
  // pencil(tau^{1/2} T_r tau^{1/2}, tau(g^k |t|^r)) has exactly the spectrum
  // of tau(|t|^r)^{-1} T(|t|^r) because tau factors multiply exactly.
  const int n = 32;
  const ThetaChain chain = build_theta_chain(3.0, n);
  const Eigen::MatrixXd M2 = chain.ops[2].dense_spd();
  const Eigen::MatrixXd P3 = chain.ops[3].dense_spd();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(M2, P3, Eigen::EigenvaluesOnly);
  const Symbol rest = Symbol::abs_pow(1.0);
  const Eigen::VectorXd expected =
      tauprec::preconditioned_spectrum(build_toeplitz(rest, n), build_tau(rest, n));
  CHECK((ges.eigenvalues() - expected).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("verification respects the dense cap") {
  CHECK_THROWS_AS(verify_chain(3.0, 128, 64), tauprec::DenseCapExceeded);
}

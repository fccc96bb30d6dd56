#include <doctest.h>

#include <cmath>

#include "kfp/ims.hpp"
#include "kfp/operators.hpp"
#include "kfp/partition.hpp"
#include "kfp/potential.hpp"
#include "kfp/states.hpp"
#include "support/oracles.hpp"

using namespace kfp;

TEST_CASE("localization identity is exact on a plateau-supported state") {
  // support inside (4/3, 3/2), where chi_0 = 1 and every gradient vanishes
  auto disc = Discretization::make(1, 128, 8, 4.0);
  Polynomial v = Polynomial::parse("1 4\n");
  OperatorMatrix kv = assemble_kv(v, disc);
  DyadicPartition part;
  Eigen::VectorXd u = mode_state(disc, q_bump_values(disc, 1.42, 0.08), 1);
  ImsReport rep = ims_residual(kv, part, u);
  CHECK(rep.lhs > 0.0);
  CHECK(rep.residual <= 1e-12);
  CHECK(rep.sum_commutator <= 1e-20 * rep.lhs);
  CHECK(rep.inequality_slack >= -1e-12 * rep.lhs);
}

TEST_CASE("localization residual is discretization-small on smooth states") {
  // box edge at 17/12 sits on the chi_0 plateau, so the periodized cutoffs
  // are flat at the seam and the spline commutator is the only error source
  auto disc = Discretization::make(1, 96, 12, 17.0 / 12.0);
  Polynomial v = Polynomial::parse("1 4\n");
  OperatorMatrix kv = assemble_kv(v, disc);
  DyadicPartition part;
  for (const auto& u : random_smooth_states(disc, 4, 2024)) {
    ImsReport rep = ims_residual(kv, part, u);
    CHECK(rep.lhs > 0.0);
    CHECK(rep.residual < 1e-6);
    CHECK(rep.inequality_slack >= -1e-9 * std::max(rep.lhs, 1.0));
    CHECK(rep.gradient_sup > 0.0);
  }
}

TEST_CASE("state dilation preserves the weighted norm") {
  auto disc = Discretization::make(1, 48, 6, 12.0);
  Eigen::VectorXd u = mode_state(disc, q_bump_values(disc, 6.0, 2.0), 1);
  for (int j = 1; j <= 3; ++j) {
    Eigen::VectorXd vstate = scale_state(u, j, disc);
    double before = weighted_norm(u, disc);
    double after = weighted_norm(vstate, disc.scaled(j));
    CHECK(after == doctest::Approx(before).epsilon(1e-13));
  }
  // even j*d: the dilation factor is an exact power of two
  Eigen::VectorXd v2 = scale_state(u, 2, disc);
  CHECK((v2 - 2.0 * u).norm() == 0.0);
}

TEST_CASE("zoomed operator norms match the dilated state") {
  auto hv = HomogeneousPotential::from(Polynomial::parse("1 4\n"));
  for (int j : {1, 2, 3}) {
    double width = std::ldexp(1.0, j);
    auto disc = Discretization::make(1, 64, 8, 3.0 * width);
    Eigen::VectorXd u = mode_state(disc, q_bump_values(disc, 1.5 * width, 0.5 * width), 2);
    double mismatch = scaled_norm_check(hv, j, u, disc);
    CHECK(mismatch < 1e-8);
  }
}

TEST_CASE("dilation at level zero is the identity") {
  auto hv = HomogeneousPotential::from(Polynomial::parse("1 4\n"));
  auto disc = Discretization::make(1, 32, 6, 3.0);
  Eigen::VectorXd u = mode_state(disc, q_bump_values(disc, 1.5, 0.5), 0);
  CHECK(scaled_norm_check(hv, 0, u, disc) == 0.0);
  CHECK((scale_state(u, 0, disc) - u).norm() == 0.0);
}

TEST_CASE("states leaking out of the dyadic shell are rejected") {
  auto hv = HomogeneousPotential::from(Polynomial::parse("1 4\n"));
  auto disc = Discretization::make(1, 64, 6, 6.0);
  // support [1.0, 2.2] pokes below the inner shell radius 1.5
  Eigen::VectorXd u = mode_state(disc, q_bump_values(disc, 1.6, 0.6), 0);
  CHECK_THROWS_AS(scaled_norm_check(hv, 1, u, disc), std::invalid_argument);
}

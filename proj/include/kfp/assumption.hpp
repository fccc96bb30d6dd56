#pragma once

// Critical set of V on the unit sphere, the nondegeneracy verdict
// (every critical point must have tr_minus > 0), and the derived constants
// epsilon0..epsilon3 separating the near-critical region from the rest.

#include <Eigen/Dense>
#include <vector>

#include "kfp/polynomial.hpp"
#include "kfp/potential.hpp"

namespace kfp {

struct CriticalSet {
  std::vector<Eigen::VectorXd> points;  // on the unit sphere, |q| = 1 to 1e-12
  std::vector<double> residuals;        // |grad V| at each point
  double resolution = 0.0;              // grid spacing used for the scan
  double cluster_radius = 0.0;
  std::vector<Eigen::VectorXd> unconverged;  // flagged seeds Newton could not settle
};

struct SearchParams {
  double resolution = 1e-3;   // angular / lattice spacing on the sphere
  double refine_tol = 1e-9;   // relative residual target for refined points
  int max_newton = 300;
};

// Grid scan of |grad V| on the sphere; cells below an adaptive threshold are
// refined by damped Gauss-Newton on (grad V(q), (|q|^2-1)/2), deduplicated by
// clustering, and closed under q -> -q (zeros of a homogeneous gradient come
// in antipodal pairs).
CriticalSet find_critical_points(const HomogeneousPotential& v, const SearchParams& params);

struct AssumptionReport {
  bool holds = false;
  CriticalSet critical_set;
  std::vector<Eigen::VectorXd> failures;  // critical points with tr_minus = 0
  // epsilon0: min over critical points of tr_minus/(1+tr_plus); +inf when the
  // critical set is empty (epsilon0_infinite set, epsilon0 carries a 0).
  double epsilon0 = 0.0;
  bool epsilon0_infinite = false;
  double epsilon1 = 0.0;  // largest dyadic radius keeping the ratio >= epsilon0/2
  double epsilon2 = 0.0;  // min |grad V| at sphere points with d(q, K0) >= epsilon1
  double epsilon3 = 0.0;  // max tr_minus over the sphere
  double resolution = 0.0;
};

// Sphere-sampled throughout: by homogeneity every quantity on the shell is a
// power of |q| times its value on the unit sphere, so the sphere slice
// determines the constants up to explicit factors.
// Throws NonConvergence when the critical-point search left unresolved cells.
AssumptionReport check_assumption(const HomogeneousPotential& v, const SearchParams& params);

// Distance from an arbitrary point to the radial segments
// {lambda*q0 : lambda in [3/4, 8/3]} over critical directions q0 (the shell
// slice of the critical cone). Infinity when the set is empty.
double shell_critical_distance(const CriticalSet& k0, const Eigen::VectorXd& q);

struct CompactnessReport {
  double delta = 0.0;
  HessianNorm convention = HessianNorm::OpNorm;
  double exponent = 0.0;
  double m_delta = 0.0;
  Eigen::VectorXd m_delta_argmin;
  double worst_ratio = 0.0;  // min over samples of f_delta(lambda*q) / (m_delta*lambda^exponent)
  std::vector<double> lambdas;
  int ray_samples = 0;
  std::vector<Eigen::VectorXd> violations;  // directions where the ratio dips below 1 - tol
};

// Checks f_delta(lambda*q) >= m_delta * lambda^exponent on sampled rays,
// the sufficient condition for (K_V+1)^{-1} to be compact. Throws
// HypothesisViolated when f_delta effectively vanishes on the sphere
// (sphere minimum below 1e-9 times the sphere maximum).
CompactnessReport compact_resolvent_indicator(const HomogeneousPotential& v, double delta,
                                              HessianNorm conv, int ray_samples = 512,
                                              double tol = 1e-6);

}  // namespace kfp

#pragma once

// Pointwise quantities attached to a potential: Hessian trace splits, the
// constants A_V / B_V for quadratic potentials, the log-corrected weight L,
// the coercivity witness f_delta with its growth exponent, and Taylor
// surrogates with empirical gradient-error ratios.

#include <Eigen/Dense>
#include <string>

#include "kfp/polynomial.hpp"

namespace kfp {

struct TraceSplit {
  Eigen::VectorXd point;
  Eigen::VectorXd hessian_eigenvalues;  // ascending
  double tr_plus = 0.0;   // sum of strictly positive eigenvalues
  double tr_minus = 0.0;  // minus the sum of strictly negative ones
};

// Eigenvalues with |lambda| <= 1e-12*max(1,|H|) are treated as zero: they sit
// on the non-positive branch but contribute nothing to either sum.
TraceSplit trace_split(const Polynomial& v, const Eigen::VectorXd& q);

struct PotentialConstants {
  double a_v = 1.0;
  double b_v = 0.0;
  double tr_plus = 0.0;
  double tr_minus = 0.0;
  double min_gradient = 0.0;  // exact: distance from -grad(0) to range of the Hessian
  bool hypothesis_nondegenerate = false;  // tr_minus + min_gradient != 0
};

// Quadratic potentials only (constant Hessian); rejects total degree > 2.
PotentialConstants potential_constants(const Polynomial& v);

// L(s) = (s+1)/log(s+1) for s >= 1 (natural log). Minimum e at s = e-1,
// increasing beyond; rejects s < 1.
double log_weight(double s);

enum class HessianNorm { OpNorm, Det };
HessianNorm hessian_norm_from_string(const std::string& name);  // "opnorm" / "det"
std::string to_string(HessianNorm conv);

// OpNorm: largest |eigenvalue|. Det: |determinant|.
double hessian_norm(const Eigen::MatrixXd& h, HessianNorm conv);

// f_delta(q) = |grad V(q)|^{4(1-delta)/3} + |Hess V(q)|^{1-delta}.
double f_delta(const Polynomial& v, const Eigen::VectorXd& q, double delta, HessianNorm conv);

struct GrowthReport {
  double exponent = 0.0;  // (1-delta) * min{4/3*(r-1), (r-2) or d*(r-2)}
  double m_delta = 0.0;   // min of f_delta over the unit sphere
  Eigen::VectorXd argmin;
};

// Requires degree r > 2. The Hessian-norm branch of the exponent is (r-2)
// under OpNorm and d*(r-2) under Det, matching how each norm scales.
GrowthReport growth_exponent(const HomogeneousPotential& v, double delta, HessianNorm conv,
                             double sphere_resolution = 2e-3);

// Taylor surrogates about q0, expanded back to plain polynomials in q.
// taylor_linear keeps only the first-order terms (no constant); the constant
// is irrelevant to gradients and drifts. taylor_quadratic keeps orders 0..2.
Polynomial taylor_linear(const Polynomial& v, const Eigen::VectorXd& q0);
Polynomial taylor_quadratic(const Polynomial& v, const Eigen::VectorXd& q0);

// sup over sampled |q-q0| = rho of |grad V(q) - grad T(q)| / rho^order.
double max_gradient_error(const Polynomial& v, const Polynomial& taylor,
                          const Eigen::VectorXd& q0, double rho, int order);

}  // namespace kfp

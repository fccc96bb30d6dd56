#pragma once

#include <Eigen/Dense>

#include "kfp/discretization.hpp"
#include "kfp/operators.hpp"
#include "kfp/partition.hpp"
#include "kfp/potential.hpp"

namespace kfp {

// Localization identity for an assembled operator K and the dyadic family:
//   ||Ku||^2 = sum_j ||K(chi_j u)||^2 - ||(p.grad chi_j) u||^2.
// The commutator multipliers use the analytic spline derivative, so the
// reported residual is pure discretization error.
struct ImsReport {
  double lhs = 0.0;             // ||Ku||^2
  double sum_localized = 0.0;   // sum_j ||K(chi_j u)||^2
  double sum_commutator = 0.0;  // sum_j ||(p.grad chi_j) u||^2
  double residual = 0.0;        // |lhs - (sum_localized - sum_commutator)| / lhs
  // Inequality form: ||Ku||^2 >= sum_j ||K(chi_j u)||^2 - 2 c_chi <u, O_p u>,
  // with c_chi = sup_q sum_j |grad chi_j|^2 (uses p^2 <= 2 O_p).
  double gradient_sup = 0.0;    // c_chi over the grid radii
  double inequality_slack = 0.0;
};

ImsReport ims_residual(const OperatorMatrix& k, const DyadicPartition& partition,
                       const Eigen::VectorXd& u);

// Unitary dilation onto the level-j grid: v(q, p) = 2^{jd/2} u(2^j q, p).
// Grids match point-for-point, so this is a scalar multiple of the data.
Eigen::VectorXd scale_state(const Eigen::VectorXd& u, int j, const Discretization& disc);

// Relative mismatch between ||K_V u|| on disc and ||K_{j,V} v|| on the
// 2^-j-scaled grid. Requires u supported (to 1e-12 of its sup) in the j-th
// dyadic shell 2^j*[3/4, 8/3].
double scaled_norm_check(const HomogeneousPotential& v, int j, const Eigen::VectorXd& u,
                         const Discretization& disc);

}  // namespace kfp

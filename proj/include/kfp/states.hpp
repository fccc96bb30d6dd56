#pragma once

#include <Eigen/Dense>
#include <vector>

#include "kfp/discretization.hpp"

namespace kfp {

// Test states on a discretization, indexed q-major like the operators.

// exp(-1/(1-t^2)) for |t| < 1, 0 outside; peak value e^{-1} left unnormalized.
double mollifier_bump(double t);

// Per-grid-point values of a compactly supported bump at q = center with the
// given half-width (d = 1 grids).
Eigen::VectorXd q_bump_values(const Discretization& disc, double center, double width);

// Gaussian samples exp(-(q-center)^2/(2 sigma^2)); decays below 1e-16 within
// ~8.5 sigma, effectively compact on the grid.
Eigen::VectorXd q_gaussian_values(const Discretization& disc, double center, double sigma);

// Tensor product of a q-profile with the Hermite mode `mode` (d = 1),
// normalized to unit weighted norm.
Eigen::VectorXd mode_state(const Discretization& disc, const Eigen::VectorXd& qvals, int mode);

// Seeded pseudo-random states vanishing on grid points within
// margin*box of the boundary, unit-normalized.
std::vector<Eigen::VectorXd> random_interior_states(const Discretization& disc, int count,
                                                    unsigned seed, double margin = 0.125);

// Random mixtures of interior Gaussian bumps times low Hermite modes (d = 1);
// smooth in q, so spectral differentiation errors stay at roundoff level.
std::vector<Eigen::VectorXd> random_smooth_states(const Discretization& disc, int count,
                                                  unsigned seed, int max_mode = 4);

// sqrt(dq^d sum u_i^2): grid quadrature in q, exact Hermite orthonormality in p.
double weighted_norm(const Eigen::VectorXd& u, const Discretization& disc);

}  // namespace kfp

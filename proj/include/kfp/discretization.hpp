#pragma once

// Position grid x Hermite truncation defining the finite-dimensional home of
// the operators. Index layout is q-major: for d=1, idx = iq*Np + n; for d=2,
// idx = (iq1*Nq + iq2)*Np^2 + n1*Np + n2.

#include <Eigen/Dense>
#include <string>

namespace kfp {

enum class Boundary { Periodic, Dirichlet };
Boundary boundary_from_string(const std::string& name);  // "periodic" / "dirichlet"
std::string to_string(Boundary bc);

struct Discretization {
  int d = 1;
  int nq = 0;  // grid points per axis
  int np = 0;  // Hermite modes per axis
  double box = 0.0;  // box [-box, box]^d
  Boundary bc = Boundary::Periodic;
  Eigen::VectorXd qgrid;  // per-axis nodes
  double dq = 0.0;        // uniform spacing (also the quadrature weight)

  static Discretization make(int d, int nq, int np, double box,
                             Boundary bc = Boundary::Periodic);

  int q_points() const;  // nq^d
  int p_modes() const;   // np^d
  int dim() const { return q_points() * p_modes(); }

  // Same point counts on the box scaled by 2^-j; grids match point-for-point
  // under q -> 2^-j q.
  Discretization scaled(int j) const;

  // Position of the flattened q-index (d components).
  Eigen::VectorXd q_point(int flat) const;
};

// Per-axis derivative matrix: spectral circulant for periodic grids
// (exactly antisymmetric), central differences with zero boundary values for
// Dirichlet (also antisymmetric).
Eigen::MatrixXd q_derivative_matrix(const Discretization& disc);

struct SpectralBasis {
  Eigen::MatrixXd vectors;      // columns: orthonormal basis of the q-axis
  Eigen::VectorXd frequencies;  // |k| of each basis vector
};

// Real trigonometric basis (periodic) or sine basis (Dirichlet), with the
// continuum frequency of each mode; used to realize functions of D_q.
SpectralBasis q_spectral_basis(const Discretization& disc);

}  // namespace kfp

#pragma once

// Velocity-side building blocks in the oscillator eigenbasis. psi_n are the
// orthonormal Hermite functions; multiplication by p and d/dp act by the
// usual ladder coefficients, and 1/2(-d^2/dp^2 + p^2) is diagonal.

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace kfp {

// p psi_n = sqrt(n/2) psi_{n-1} + sqrt((n+1)/2) psi_{n+1}; symmetric tridiagonal.
Eigen::SparseMatrix<double> hermite_p(int n);

// d/dp psi_n = sqrt(n/2) psi_{n-1} - sqrt((n+1)/2) psi_{n+1}; antisymmetric.
Eigen::SparseMatrix<double> hermite_dp(int n);

// Diagonal of the truncated oscillator: n + 1/2.
Eigen::VectorXd oscillator_diag(int n);

struct GaussHermite {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;  // include the e^{-p^2} factor
};

// Golub-Welsch on the Jacobi matrix (off-diagonal sqrt(k/2)); exact for
// polynomials of degree <= 2n-1 against e^{-p^2}.
GaussHermite gauss_hermite(int n);

// Row k = psi_k evaluated at the given points.
Eigen::MatrixXd hermite_values(int n, const Eigen::VectorXd& p);

// Same recurrence without the Gaussian factor: psi_k(p) * e^{p^2/2}.
// Pairs with gauss_hermite weights without overflow.
Eigen::MatrixXd hermite_poly_values(int n, const Eigen::VectorXd& p);

}  // namespace kfp

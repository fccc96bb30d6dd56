#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <string>

#include "kfp/discretization.hpp"
#include "kfp/potential.hpp"

namespace kfp {

// Assembled operator on a tensor grid, kept sparse.  Row/column index layout
// follows Discretization (q-major, Hermite index fastest).
struct OperatorMatrix {
  Eigen::SparseMatrix<double> mat;
  std::string name;
  Discretization disc;
  std::string potential;  // source text of V, empty for potential-free parts
};

// Harmonic-oscillator part in p: diagonal n1 + ... + nd + d/2.
OperatorMatrix assemble_op(const Discretization& disc);

// Transport-minus-drift part p.dq - grad V(q).dp.  Antisymmetric whenever the
// q-derivative matrix is (both boundary choices here qualify).
OperatorMatrix assemble_xv(const Polynomial& v, const Discretization& disc);

// Full operator X_V + O_p.
OperatorMatrix assemble_kv(const Polynomial& v, const Discretization& disc);

// Zoomed operator at dyadic level j >= 0 for a homogeneous potential of
// degree r: 2^{-j} transport - 2^{j(r-1)} drift + O_p.  j = 0 recovers K_V.
OperatorMatrix assemble_kj(const HomogeneousPotential& v, int j,
                           const Discretization& disc);

// Same prefactors (degree r fixes them), arbitrary drift potential; lets the
// Taylor surrogates, which are not homogeneous, ride the level-j scaling.
OperatorMatrix assemble_kj_drift(const Polynomial& drift_potential, int degree, int j,
                                 const Discretization& disc);

// Multiplier sum_axis g_axis(q) p_axis from per-axis grid values g
// (q_points x d); realizes commutators like p.grad(chi).
Eigen::SparseMatrix<double> momentum_multiplier(const Discretization& disc,
                                                const Eigen::MatrixXd& g);

enum class Weight { Op, Grad, Hess, Dq };

std::string weight_to_string(Weight w);
Weight weight_from_string(const std::string& s);

// One of the four logarithmically corrected multipliers.  Three of them are
// diagonal in the product basis; the Dq one is diagonal in the q-spectral
// basis and stored as a dense q-side block acting as (block x identity_p).
struct WeightedMultiplier {
  Weight which = Weight::Op;
  bool diagonal = true;
  Eigen::VectorXd diag;         // full-dimension diagonal when `diagonal`
  Eigen::MatrixXd qblock;       // q-side symmetric block otherwise
  int q_points = 0;
  int p_modes = 0;
  double min_argument = 0.0;    // smallest s fed to the weight profile
  double min_value = 0.0;       // smallest realized weight eigenvalue

  int dim() const { return diagonal ? static_cast<int>(diag.size()) : q_points * p_modes; }
  Eigen::VectorXd apply(const Eigen::VectorXd& u) const;
  // Adds the square of the multiplier to a dense accumulator.
  void add_square_into(Eigen::MatrixXd& acc) const;
  Eigen::MatrixXd dense() const;
};

// log_corrected=false skips the L profile and realizes the bare bracket
// (used by the remainder-form comparison, which has no log correction).
WeightedMultiplier assemble_weight(Weight which, const Polynomial& v,
                                   const Discretization& disc,
                                   HessianNorm convention = HessianNorm::OpNorm,
                                   bool log_corrected = true);

// Smallest singular value of (K + shift I) by inverse iteration on the
// normal matrix.  Dense Cholesky below `dense_threshold` rows, sparse
// factorization above.  Throws Breakdown if the iteration stagnates.
double smallest_singular_value(const Eigen::SparseMatrix<double>& k,
                               double shift = 0.0, double rel_tol = 1e-8,
                               unsigned seed = 20240817,
                               int dense_threshold = 5000);

// Dense eigenvalues, sorted by real part then imaginary part.
Eigen::VectorXcd dense_spectrum(const Eigen::SparseMatrix<double>& m);

void write_matrix_market(const std::string& path,
                         const Eigen::SparseMatrix<double>& m);
void write_spectrum_csv(const std::string& path, const Eigen::VectorXcd& eigs);

}  // namespace kfp

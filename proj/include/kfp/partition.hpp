#pragma once

// Partitions of unity used to localize the operator: the dyadic family
// chi_j (squares summing to 1 over shells of radii ~2^j) and the fine
// lattice partition theta_k at scale rho = |ln h| h^nu, plus the exponent
// selector and the h/H bookkeeping of the semiclassical rescaling.

#include <Eigen/Dense>
#include <vector>

#include "kfp/cutoffs.hpp"

namespace kfp {

// Shell where the rescaled states live: 3/4 <= |q| <= 8/3.
constexpr double kShellInner = 0.75;
constexpr double kShellOuter = 8.0 / 3.0;

class DyadicPartition {
 public:
  explicit DyadicPartition(int max_level = 40);

  // j = -1 is the center patch chi/sqrt(D); j >= 0 is phi(2^-j .)/sqrt(D).
  double chi(int j, const Eigen::VectorXd& q) const { return chi_radial(j, q.norm()); }
  double chi_radial(int j, double r) const;
  double chi_radial_deriv(int j, double r) const;  // d/dr, analytic
  Eigen::VectorXd chi_grad(int j, const Eigen::VectorXd& q) const;

  double sum_squares(const Eigen::VectorXd& q) const;
  std::vector<int> active(double r) const;  // levels with chi_j(r) != 0
  int max_level() const { return max_level_; }
  const RadialCutoffPair& pair() const { return pair_; }

 private:
  double normalizer(double r) const;        // D = chi^2 + sum phi_j^2
  double normalizer_deriv(double r) const;  // dD/dr
  RadialCutoffPair pair_;
  int max_level_;
};

// nu exponent: must satisfy max(1/6, 1/8+3/(8(r-1))) < nu < 1/4+1/(4(r-1)).
// Returns 3/16 + 5/(16(r-1)) for 2 < r < 10 and 5/24 beyond; rejects r <= 2.
double select_nu(double r);
void assert_nu_admissible(double r, double nu, double margin = 1e-6);

// Semiclassical bookkeeping for dyadic level j: h = 2^{-2(r-1)j} and
// H = h^{-1/2+1/(2(r-1))} = 2^{j(r-2)}.
double dyadic_h(double r, int j);
double dyadic_H(double r, int j);

struct DominationRatios {
  double commutator_ratio = 0.0;  // ((ln(1/h))^2 h^{2nu})^2 / h over H/ln^2(H)
  double taylor_ratio = 0.0;      // (ln(1/h))^-2 h^{1/(r-1)-2nu} over H/ln^2(H)
};

// Both must decay as j grows for the localization errors to be absorbed by
// the subelliptic gain H/ln^2(H). Rejects j <= 0 (h=1 makes ln h vanish).
DominationRatios error_domination_ratios(double r, double nu, int j);

class FinePartition {
 public:
  // Builds the lattice partition at scale rho = |ln h| h^nu covering the
  // shell: integer lattice for d=1, hexagonal for d=2, spacing 1.5*rho.
  // Rejects h outside (0,1) and rho exceeding the shell width.
  FinePartition(double h, double nu, int d);

  double h() const { return h_; }
  double nu() const { return nu_; }
  double rho() const { return rho_; }
  double spacing() const { return spacing_; }
  int dim() const { return d_; }
  int size() const { return static_cast<int>(centers_.size()); }
  const std::vector<Eigen::VectorXd>& centers() const { return centers_; }

  // Normalized cutoffs: squares sum to 1 on the shell and a rho-margin
  // around it. theta(k, center_k) = 1 exactly.
  double theta(int k, const Eigen::VectorXd& x) const;
  Eigen::VectorXd theta_grad(int k, const Eigen::VectorXd& x) const;
  double sum_squares(const Eigen::VectorXd& x) const;

  // Raw radial profile: 1 on [0,1/2], mollifier ramp down to 0 at 1.
  double profile(double t) const;
  double profile_deriv(double t) const;

  // Numerical sup of |grad theta_k| * rho over patch samples (the profile
  // constant G in the gradient bound G/rho).
  double gradient_constant() const;

 private:
  std::vector<int> active_centers(const Eigen::VectorXd& x) const;
  double raw(int k, const Eigen::VectorXd& x) const;
  Eigen::VectorXd raw_grad(int k, const Eigen::VectorXd& x) const;

  double h_ = 0.0, nu_ = 0.0, rho_ = 0.0, spacing_ = 0.0;
  int d_ = 1;
  std::vector<Eigen::VectorXd> centers_;
};

}  // namespace kfp

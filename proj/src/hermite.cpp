#include "kfp/hermite.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace kfp {

Eigen::SparseMatrix<double> hermite_p(int n) {
  if (n < 1) throw std::invalid_argument("hermite order must be positive");
  Eigen::SparseMatrix<double> m(n, n);
  std::vector<Eigen::Triplet<double>> t;
  for (int k = 0; k + 1 < n; ++k) {
    double c = std::sqrt((k + 1) / 2.0);
    t.emplace_back(k, k + 1, c);
    t.emplace_back(k + 1, k, c);
  }
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

Eigen::SparseMatrix<double> hermite_dp(int n) {
  if (n < 1) throw std::invalid_argument("hermite order must be positive");
  Eigen::SparseMatrix<double> m(n, n);
  std::vector<Eigen::Triplet<double>> t;
  for (int k = 0; k + 1 < n; ++k) {
    double c = std::sqrt((k + 1) / 2.0);
    t.emplace_back(k, k + 1, c);    // coefficient of psi_k in d/dp psi_{k+1}
    t.emplace_back(k + 1, k, -c);
  }
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

Eigen::VectorXd oscillator_diag(int n) {
  Eigen::VectorXd d(n);
  for (int k = 0; k < n; ++k) d[k] = k + 0.5;
  return d;
}

GaussHermite gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("quadrature order must be positive");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double b = std::sqrt(k / 2.0);
    jacobi(k - 1, k) = b;
    jacobi(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  GaussHermite out;
  out.nodes = es.eigenvalues();
  out.weights.resize(n);
  if (n == 1) {
    out.weights[0] = std::sqrt(M_PI);
    return out;
  }
  // Golub-Welsch first-component weights lose relative accuracy in the tails,
  // where the component is ~1e-15 but carries absolute eigensolver error.
  // The identity w_k = 1/(n * h_{n-1}(x_k)^2) evaluated through the stable
  // recurrence keeps every weight accurate to a few ulps.
  Eigen::MatrixXd h = hermite_poly_values(n, out.nodes);
  for (int k = 0; k < n; ++k) {
    double hn1 = h(n - 1, k);
    out.weights[k] = 1.0 / (n * hn1 * hn1);
  }
  return out;
}

namespace {

Eigen::MatrixXd hermite_recurrence(int n, const Eigen::VectorXd& p, bool with_gaussian) {
  Eigen::MatrixXd out(n, p.size());
  const double norm0 = std::pow(M_PI, -0.25);
  for (int i = 0; i < p.size(); ++i) {
    double base = with_gaussian ? norm0 * std::exp(-0.5 * p[i] * p[i]) : norm0;
    out(0, i) = base;
    if (n > 1) out(1, i) = p[i] * std::sqrt(2.0) * base;
    for (int k = 1; k + 1 < n; ++k)
      out(k + 1, i) = p[i] * std::sqrt(2.0 / (k + 1)) * out(k, i) -
                      std::sqrt(k / (k + 1.0)) * out(k - 1, i);
  }
  return out;
}

}  // namespace

Eigen::MatrixXd hermite_values(int n, const Eigen::VectorXd& p) {
  return hermite_recurrence(n, p, true);
}

Eigen::MatrixXd hermite_poly_values(int n, const Eigen::VectorXd& p) {
  return hermite_recurrence(n, p, false);
}

}  // namespace kfp

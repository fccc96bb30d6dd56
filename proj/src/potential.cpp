#include "kfp/potential.hpp"

#include <cmath>
#include <stdexcept>

#include "kfp/sphere.hpp"

namespace kfp {

TraceSplit trace_split(const Polynomial& v, const Eigen::VectorXd& q) {
  TraceSplit out;
  out.point = q;
  Eigen::MatrixXd h = v.hessian(q);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  out.hessian_eigenvalues = es.eigenvalues();
  double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  double thr = 1e-12 * scale;
  for (int i = 0; i < out.hessian_eigenvalues.size(); ++i) {
    double lam = out.hessian_eigenvalues[i];
    if (lam > thr)
      out.tr_plus += lam;
    else if (lam < -thr)
      out.tr_minus -= lam;
  }
  return out;
}

namespace {

double a_v_formula(double tr_plus, double tr_minus) {
  return std::max(std::pow(1.0 + tr_plus, 2.0 / 3.0), 1.0 + tr_minus);
}

double b_v_formula(double min_gradient, double tr_minus) {
  double log_term = std::log(2.0 + tr_minus);
  return std::max(std::pow(min_gradient, 4.0 / 3.0), (1.0 + tr_minus) / (log_term * log_term));
}

}  // namespace

PotentialConstants potential_constants(const Polynomial& v) {
  if (v.total_degree() > 2)
    throw std::invalid_argument("potential_constants requires total degree <= 2, got " +
                                std::to_string(v.total_degree()));
  int d = v.dim();
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(d);
  Eigen::MatrixXd h = v.hessian(zero);           // constant
  Eigen::VectorXd g0 = v.gradient(zero);         // grad V(q) = H q + g0
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);

  PotentialConstants out;
  double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  double thr = 1e-12 * scale;
  // min over q of |H q + g0|: the component of g0 orthogonal to range(H).
  double kernel_part_sq = 0.0;
  for (int i = 0; i < d; ++i) {
    double lam = es.eigenvalues()[i];
    double proj = es.eigenvectors().col(i).dot(g0);
    if (lam > thr)
      out.tr_plus += lam;
    else if (lam < -thr)
      out.tr_minus -= lam;
    if (std::abs(lam) <= thr) kernel_part_sq += proj * proj;
  }
  out.min_gradient = std::sqrt(kernel_part_sq);
  out.a_v = a_v_formula(out.tr_plus, out.tr_minus);
  out.b_v = b_v_formula(out.min_gradient, out.tr_minus);
  out.hypothesis_nondegenerate = out.tr_minus + out.min_gradient > 1e-12;
  return out;
}

double log_weight(double s) {
  if (s < 1.0) throw std::domain_error("log_weight requires s >= 1");
  return (s + 1.0) / std::log(s + 1.0);
}

HessianNorm hessian_norm_from_string(const std::string& name) {
  if (name == "opnorm") return HessianNorm::OpNorm;
  if (name == "det") return HessianNorm::Det;
  throw std::invalid_argument("unknown hessian norm convention '" + name + "'");
}

std::string to_string(HessianNorm conv) {
  return conv == HessianNorm::OpNorm ? "opnorm" : "det";
}

double hessian_norm(const Eigen::MatrixXd& h, HessianNorm conv) {
  if (conv == HessianNorm::Det) return std::abs(h.determinant());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double f_delta(const Polynomial& v, const Eigen::VectorXd& q, double delta, HessianNorm conv) {
  if (delta < 0.0 || delta >= 1.0) throw std::domain_error("f_delta requires 0 <= delta < 1");
  double grad = v.gradient(q).norm();
  double hess = hessian_norm(v.hessian(q), conv);
  return std::pow(grad, 4.0 * (1.0 - delta) / 3.0) + std::pow(hess, 1.0 - delta);
}

GrowthReport growth_exponent(const HomogeneousPotential& v, double delta, HessianNorm conv,
                             double sphere_resolution) {
  if (delta < 0.0 || delta >= 1.0) throw std::domain_error("growth_exponent requires 0 <= delta < 1");
  int r = v.degree();
  if (r <= 2) throw std::domain_error("growth exponent needs degree r > 2");
  double grad_branch = 4.0 / 3.0 * (r - 1);
  double hess_branch = (conv == HessianNorm::Det ? v.dim() : 1) * (r - 2);
  GrowthReport out;
  out.exponent = (1.0 - delta) * std::min(grad_branch, hess_branch);
  auto f = [&](const Eigen::VectorXd& q) { return f_delta(v.poly(), q, delta, conv); };
  if (v.dim() == 3) sphere_resolution = std::max(sphere_resolution, 2e-2);
  SphereMin m = minimize_over_sphere(v.dim(), sphere_resolution, f);
  out.m_delta = m.value;
  out.argmin = m.argmin;
  return out;
}

Polynomial taylor_linear(const Polynomial& v, const Eigen::VectorXd& q0) {
  int d = v.dim();
  Eigen::VectorXd g = v.gradient(q0);
  Polynomial out(d);
  double constant = 0.0;
  for (int i = 0; i < d; ++i) {
    if (g[i] == 0.0) continue;
    std::vector<int> e(d, 0);
    e[i] = 1;
    out.add_term(g[i], std::move(e));
    constant -= g[i] * q0[i];
  }
  if (constant != 0.0) out.add_term(constant, std::vector<int>(d, 0));
  return out;
}

Polynomial taylor_quadratic(const Polynomial& v, const Eigen::VectorXd& q0) {
  int d = v.dim();
  double v0 = v(q0);
  Eigen::VectorXd g = v.gradient(q0);
  Eigen::MatrixXd h = v.hessian(q0);
  // V(q0) + g.(q-q0) + 1/2 (q-q0)^T H (q-q0), expanded in q.
  double constant = v0 - g.dot(q0) + 0.5 * q0.dot(h * q0);
  Eigen::VectorXd linear = g - h * q0;
  Polynomial out(d);
  if (constant != 0.0) out.add_term(constant, std::vector<int>(d, 0));
  for (int i = 0; i < d; ++i) {
    if (linear[i] != 0.0) {
      std::vector<int> e(d, 0);
      e[i] = 1;
      out.add_term(linear[i], std::move(e));
    }
    for (int j = i; j < d; ++j) {
      double c = (i == j) ? 0.5 * h(i, i) : h(i, j);
      if (c != 0.0) {
        std::vector<int> e(d, 0);
        e[i] += 1;
        e[j] += 1;
        out.add_term(c, std::move(e));
      }
    }
  }
  return out;
}

double max_gradient_error(const Polynomial& v, const Polynomial& taylor,
                          const Eigen::VectorXd& q0, double rho, int order) {
  int d = v.dim();
  auto dirs = sphere_grid(d, d == 1 ? 1.0 : (d == 2 ? 2.0 * M_PI / 256 : 0.15));
  double sup = 0.0;
  for (const auto& u : dirs) {
    Eigen::VectorXd q = q0 + rho * u;
    double err = (v.gradient(q) - taylor.gradient(q)).norm();
    sup = std::max(sup, err);
  }
  return sup / std::pow(rho, order);
}

}  // namespace kfp

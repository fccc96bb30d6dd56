#include "kfp/ims.hpp"

#include <cmath>
#include <stdexcept>

#include "kfp/states.hpp"

namespace kfp {

namespace {

// Pointwise multiply a state by a q-only function given per grid point.
Eigen::VectorXd q_multiply(const Eigen::VectorXd& u, const Eigen::VectorXd& qvals,
                           const Discretization& disc) {
  Eigen::VectorXd out(u.size());
  for (int iq = 0; iq < disc.q_points(); ++iq)
    out.segment(iq * disc.p_modes(), disc.p_modes()) =
        qvals(iq) * u.segment(iq * disc.p_modes(), disc.p_modes());
  return out;
}

}  // namespace

ImsReport ims_residual(const OperatorMatrix& k, const DyadicPartition& partition,
                       const Eigen::VectorXd& u) {
  const Discretization& disc = k.disc;
  if (u.size() != disc.dim()) throw std::invalid_argument("state size mismatch");

  ImsReport rep;
  double cell = std::pow(disc.dq, disc.d);
  rep.lhs = cell * (k.mat * u).squaredNorm();

  double max_radius = disc.box * std::sqrt(static_cast<double>(disc.d)) + 1.0;
  int top = 0;
  while (std::ldexp(kShellInner, top) <= max_radius && top < partition.max_level()) ++top;

  Eigen::VectorXd op_diag(disc.p_modes());
  for (int ip = 0; ip < disc.p_modes(); ++ip)
    op_diag(ip) = disc.d == 1 ? ip + 0.5 : (ip / disc.np) + (ip % disc.np) + 1.0;
  double op_quad = 0.0;
  for (int iq = 0; iq < disc.q_points(); ++iq)
    for (int ip = 0; ip < disc.p_modes(); ++ip) {
      double c = u(iq * disc.p_modes() + ip);
      op_quad += op_diag(ip) * c * c;
    }
  op_quad *= cell;

  for (int j = -1; j <= top; ++j) {
    Eigen::VectorXd chival(disc.q_points());
    Eigen::MatrixXd chigrad(disc.q_points(), disc.d);
    bool any = false;
    for (int iq = 0; iq < disc.q_points(); ++iq) {
      Eigen::VectorXd q = disc.q_point(iq);
      chival(iq) = partition.chi(j, q);
      chigrad.row(iq) = partition.chi_grad(j, q).transpose();
      if (chival(iq) != 0.0 || chigrad.row(iq).cwiseAbs().maxCoeff() != 0.0) any = true;
    }
    if (!any) continue;

    Eigen::VectorXd piece = q_multiply(u, chival, disc);
    rep.sum_localized += cell * (k.mat * piece).squaredNorm();
    Eigen::SparseMatrix<double> comm = momentum_multiplier(disc, chigrad);
    rep.sum_commutator += cell * (comm * u).squaredNorm();
  }

  double denom = std::max(rep.lhs, 1e-300);
  rep.residual = std::abs(rep.lhs - (rep.sum_localized - rep.sum_commutator)) / denom;

  // sup over a dense radius sample of sum_j |chi_j'|^2
  int samples = 4096;
  for (int i = 0; i <= samples; ++i) {
    double r = max_radius * i / samples;
    double s = 0.0;
    for (int j : partition.active(r)) {
      double d = partition.chi_radial_deriv(j, r);
      s += d * d;
    }
    rep.gradient_sup = std::max(rep.gradient_sup, s);
  }
  rep.inequality_slack = rep.lhs - rep.sum_localized + 2.0 * rep.gradient_sup * op_quad;
  return rep;
}

Eigen::VectorXd scale_state(const Eigen::VectorXd& u, int j, const Discretization& disc) {
  if (u.size() != disc.dim()) throw std::invalid_argument("state size mismatch");
  double factor = std::sqrt(std::ldexp(1.0, j * disc.d));
  return factor * u;
}

double scaled_norm_check(const HomogeneousPotential& v, int j, const Eigen::VectorXd& u,
                         const Discretization& disc) {
  if (j < 0) throw std::invalid_argument("dyadic level j must be >= 0");
  if (u.size() != disc.dim()) throw std::invalid_argument("state size mismatch");

  double lo = std::ldexp(kShellInner, j), hi = std::ldexp(kShellOuter, j);
  double sup = u.cwiseAbs().maxCoeff();
  for (int iq = 0; iq < disc.q_points(); ++iq) {
    double r = disc.q_point(iq).norm();
    if (r >= lo - disc.dq && r <= hi + disc.dq) continue;
    double local = u.segment(iq * disc.p_modes(), disc.p_modes()).cwiseAbs().maxCoeff();
    if (local > 1e-12 * sup)
      throw std::invalid_argument("state is not supported in the level-" + std::to_string(j) +
                                  " dyadic shell");
  }

  OperatorMatrix kv = assemble_kv(v.poly(), disc);
  Discretization zoomed = disc.scaled(j);
  OperatorMatrix kj = assemble_kj(v, j, zoomed);
  Eigen::VectorXd vj = scale_state(u, j, disc);

  double norm_v = weighted_norm(kv.mat * u, disc);
  double norm_j = weighted_norm(kj.mat * vj, zoomed);
  return std::abs(norm_v - norm_j) / std::max(norm_v, 1e-300);
}

}  // namespace kfp

#include "kfp/estimates.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "kfp/errors.hpp"
#include "kfp/log.hpp"
#include "kfp/operators.hpp"
#include "kfp/states.hpp"

namespace kfp {

namespace {

using Clock = std::chrono::steady_clock;

long elapsed_ms(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

double cell_volume(const Discretization& disc) {
  return std::pow(disc.dq, disc.d);
}

}  // namespace

EstimateReport verify_quadratic_remainder(const Polynomial& v, const Discretization& disc) {
  auto start = Clock::now();
  PotentialConstants pc = potential_constants(v);  // rejects degree > 2

  OperatorMatrix kv = assemble_kv(v, disc);
  OperatorMatrix xv = assemble_xv(v, disc);
  OperatorMatrix op = assemble_op(disc);
  WeightedMultiplier wg = assemble_weight(Weight::Grad, v, disc, HessianNorm::OpNorm, false);
  WeightedMultiplier wd = assemble_weight(Weight::Dq, v, disc, HessianNorm::OpNorm, false);

  Eigen::MatrixXd kd = Eigen::MatrixXd(kv.mat);
  Eigen::MatrixXd xd = Eigen::MatrixXd(xv.mat);
  Eigen::MatrixXd opd = Eigen::MatrixXd(op.mat);

  Eigen::MatrixXd lhs = kd.transpose() * kd;
  lhs.diagonal().array() += pc.a_v;

  Eigen::MatrixXd rhs = xd.transpose() * xd;
  rhs += opd * opd;
  wg.add_square_into(rhs);
  wd.add_square_into(rhs);

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrized(lhs),
                                                               symmetrized(rhs));
  if (es.info() != Eigen::Success) throw Breakdown("generalized eigensolve failed");

  EstimateReport rep;
  rep.inequality = "remainder";
  rep.constant = es.eigenvalues()(0);
  Eigen::VectorXd u = es.eigenvectors().col(0);
  u /= weighted_norm(u, disc);
  rep.certificate = u;
  double cell = cell_volume(disc);
  rep.per_term["Op"] = cell * (op.mat * u).squaredNorm();
  rep.per_term["XV"] = cell * (xv.mat * u).squaredNorm();
  rep.per_term["grad"] = cell * wg.apply(u).squaredNorm();
  rep.per_term["Dq"] = cell * wd.apply(u).squaredNorm();
  rep.disc = disc;
  rep.potential = v.to_string();
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

EstimateReport verify_quadratic_lower(const Polynomial& v, const Discretization& disc) {
  auto start = Clock::now();
  PotentialConstants pc = potential_constants(v);
  if (!pc.hypothesis_nondegenerate)
    throw HypothesisViolated(
        "tr_minus + min |grad V| vanishes; the quadratic lower bound is undefined");

  OperatorMatrix kv = assemble_kv(v, disc);
  double sigma = smallest_singular_value(kv.mat);

  EstimateReport rep;
  rep.inequality = "lower";
  rep.constant = sigma * sigma / pc.b_v;
  rep.per_term["sigma_min"] = sigma;
  rep.per_term["B_V"] = pc.b_v;
  rep.disc = disc;
  rep.potential = v.to_string();
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

EstimateReport verify_global_estimate(const Polynomial& v, const Discretization& disc,
                                      const GlobalEstimateParams& params) {
  auto start = Clock::now();
  if (params.c_max < 1.0) throw std::invalid_argument("C search cap must be >= 1");

  OperatorMatrix kv = assemble_kv(v, disc);
  Eigen::MatrixXd kd = Eigen::MatrixXd(kv.mat);
  Eigen::MatrixXd ktk = kd.transpose() * kd;
  kd.resize(0, 0);

  const int n = disc.dim();
  double s2 = params.weight_scale * params.weight_scale;
  Eigen::MatrixXd weights_sq = Eigen::MatrixXd::Zero(n, n);
  if (s2 > 0.0) {
    for (Weight which : {Weight::Op, Weight::Grad, Weight::Hess, Weight::Dq})
      assemble_weight(which, v, disc, params.convention).add_square_into(weights_sq);
    weights_sq = symmetrized(weights_sq);
  }

  auto form_at = [&](double c) {
    Eigen::MatrixXd m = ktk;
    m.diagonal().array() += c;
    if (s2 > 0.0) m -= (s2 / c) * weights_sq;
    return m;
  };
  double scale = ktk.diagonal().cwiseAbs().maxCoeff() +
                 (s2 > 0.0 ? weights_sq.diagonal().cwiseAbs().maxCoeff() : 0.0) + 1.0;
  auto psd = [&](double c) {
    Eigen::MatrixXd m = form_at(c);
    m.diagonal().array() += 1e-9 * scale;
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    return llt.info() == Eigen::Success;
  };

  EstimateReport rep;
  rep.inequality = "main";
  rep.disc = disc;
  rep.potential = v.to_string();
  rep.seed = params.seed;
  rep.weight_scale = params.weight_scale;
  rep.form_scale = scale;

  double c_star;
  double lo_end = 1.0;
  if (psd(1.0)) {
    c_star = 1.0;
    rep.at_lower_endpoint = true;
  } else {
    double lo = 1.0, hi = 2.0;
    bool found = false;
    while (true) {
      if (hi >= params.c_max) hi = params.c_max;
      log::debug("doubling scan: trying C = " + std::to_string(hi));
      if (psd(hi)) { found = true; break; }
      if (hi >= params.c_max) break;
      lo = hi;
      hi *= 2.0;
    }
    if (!found) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(form_at(params.c_max),
                                                        Eigen::EigenvaluesOnly);
      double worst = es.eigenvalues()(0);
      throw SearchNotFound("no admissible C up to " + std::to_string(params.c_max) +
                               "; smallest eigenvalue there is " + std::to_string(worst),
                           worst);
    }
    while (hi - lo > 0.9 * params.rel_tol * hi) {
      double mid = 0.5 * (lo + hi);
      if (psd(mid)) hi = mid; else lo = mid;
    }
    c_star = hi;
    lo_end = lo;
  }
  rep.constant = c_star;

  // Certificate: ground vector of the form just below C*; strict negativity
  // there plus nonnegativity just above is what makes C* a genuine threshold.
  // The below point must not exceed the inadmissible bracket end, or a coarse
  // search tolerance would leave it on the admissible side.
  double below = rep.at_lower_endpoint ? c_star : std::min(0.999 * c_star, lo_end);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrized(form_at(below)));
  if (es.info() != Eigen::Success) throw Breakdown("dense eigensolve failed");
  Eigen::VectorXd u = es.eigenvectors().col(0);
  rep.certificate = u;
  rep.cert_value_below = es.eigenvalues()(0);
  rep.cert_value_above = u.dot(form_at(1.001 * c_star) * u);

  if (s2 > 0.0) {
    for (Weight which : {Weight::Op, Weight::Grad, Weight::Hess, Weight::Dq}) {
      WeightedMultiplier w = assemble_weight(which, v, disc, params.convention);
      rep.per_term[weight_to_string(which)] = w.apply(u).squaredNorm();
    }
  }
  rep.runtime_ms = elapsed_ms(start);
  return rep;
}

InfInequalityReport verify_inf_inequality(const std::vector<double>& xs) {
  InfInequalityReport rep;
  for (double x : xs) {
    if (x < 1.0) throw std::invalid_argument("samples must satisfy x >= 1");
    auto g = [x](double t) { return x / std::log(t) + t; };
    double a = 2.0, b = x + 2.0;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    for (int it = 0; it < 200 && (b - a) > 1e-13 * (1.0 + b); ++it) {
      if (g(c) < g(d)) {
        b = d; d = c; c = b - gr * (b - a);
      } else {
        a = c; c = d; d = a + gr * (b - a);
      }
    }
    double inf = std::min(g(0.5 * (a + b)), g(2.0));
    rep.x.push_back(x);
    rep.inf_value.push_back(inf);
    rep.ratio.push_back(log_weight(x) / inf);
    rep.sup_ratio = std::max(rep.sup_ratio, rep.ratio.back());
  }
  return rep;
}

LocalizationTrace localization_pipeline_trace(const HomogeneousPotential& v, int j,
                                              const Discretization& disc,
                                              const AssumptionReport& assumption) {
  if (j <= 0)
    throw std::domain_error("level j must be >= 1: at j = 0, h = 1 and the patch "
                            "radius |ln h| h^nu vanishes");
  if (v.dim() != disc.d) throw std::invalid_argument("potential/grid dimension mismatch");

  const int r = v.degree();
  LocalizationTrace trace;
  trace.j = j;
  trace.nu = select_nu(r);
  trace.h = dyadic_h(r, j);
  trace.big_h = dyadic_H(r, j);
  DominationRatios ratios = error_domination_ratios(r, trace.nu, j);
  trace.commutator_ratio = ratios.commutator_ratio;
  trace.taylor_ratio = ratios.taylor_ratio;

  FinePartition part(trace.h, trace.nu, v.dim());
  trace.rho = part.rho();

  const bool full_numerics = (disc.d == 1);
  OperatorMatrix kj;
  double cell = cell_volume(disc);
  if (full_numerics) {
    if (disc.box < kShellOuter + 3.0 * part.rho())
      throw std::invalid_argument("grid box too small for the outer patches");
    kj = assemble_kj(v, j, disc);
  }

  double err_coeff = 2.0 * std::pow(std::log(1.0 / trace.h), -2.0) *
                     std::pow(trace.h, 1.0 / (r - 1.0) - 2.0 * trace.nu);

  for (int k = 0; k < part.size(); ++k) {
    PatchTrace pt;
    pt.center = part.centers()[k];
    pt.critical_distance = shell_critical_distance(assumption.critical_set, pt.center);

    if (pt.critical_distance >= assumption.epsilon1 + part.rho()) {
      pt.case_id = 2;
    } else if (pt.critical_distance < assumption.epsilon1 - part.rho()) {
      pt.case_id = 1;
    } else {
      pt.case_id = 1;
      pt.ambiguous = true;
      ++trace.ambiguous_count;
      log::warn("patch at |q| = " + std::to_string(pt.center.norm()) +
                " straddles the epsilon1 boundary; keeping the quadratic surrogate");
    }
    (pt.case_id == 1 ? trace.case1_count : trace.case2_count) += 1;

    Polynomial surrogate = pt.case_id == 1 ? taylor_quadratic(v.poly(), pt.center)
                                           : taylor_linear(v.poly(), pt.center);
    int order = pt.case_id == 1 ? 2 : 1;
    pt.taylor_ratio = max_gradient_error(v.poly(), surrogate, pt.center, part.rho(), order);

    Eigen::VectorXd qv;
    bool resolved = false;
    if (full_numerics) {
      qv = q_bump_values(disc, pt.center(0), 0.85 * part.rho());
      resolved = qv.cwiseAbs().maxCoeff() > 0.0;  // patch may fall between grid nodes
      if (!resolved) log::warn("patch at q = " + std::to_string(pt.center(0)) +
                               " is unresolved by the grid; skipping its numerics");
    }
    if (resolved) {
      Eigen::VectorXd w = mode_state(disc, qv, std::min(1, disc.np - 1));

      double lhs = cell * (kj.mat * w).squaredNorm();
      double wnorm2 = cell * w.squaredNorm();

      double sum_loc = 0.0;
      for (int kk = 0; kk < part.size(); ++kk) {
        Eigen::VectorXd theta(disc.nq);
        bool any = false;
        for (int iq = 0; iq < disc.nq; ++iq) {
          Eigen::VectorXd x(1);
          x(0) = disc.qgrid(iq);
          theta(iq) = part.theta(kk, x);
          if (theta(iq) != 0.0 && qv(iq) != 0.0) any = true;
        }
        if (!any) continue;
        Eigen::VectorXd piece(w.size());
        for (int iq = 0; iq < disc.nq; ++iq)
          piece.segment(iq * disc.np, disc.np) = theta(iq) * w.segment(iq * disc.np, disc.np);
        sum_loc += cell * (kj.mat * piece).squaredNorm();
      }
      pt.ims_slack = lhs - 0.75 * sum_loc + err_coeff * wnorm2;

      OperatorMatrix kj_tilde = assemble_kj_drift(surrogate, r, j, disc);
      Eigen::SparseMatrix<double> diff = kj_tilde.mat - kj.mat;
      pt.split_slack = lhs - 0.5 * cell * (kj_tilde.mat * w).squaredNorm() +
                       cell * (diff * w).squaredNorm();
    }
    trace.patches.push_back(pt);
  }
  return trace;
}

}  // namespace kfp

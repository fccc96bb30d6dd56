#include "kfp/assumption.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kfp/errors.hpp"
#include "kfp/log.hpp"
#include "kfp/sphere.hpp"

namespace kfp {

namespace {

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

// Damped Gauss-Newton on F(q) = (grad V(q), (|q|^2-1)/2). Returns true when
// |grad V| drops below `target` with the sphere constraint met.
bool refine_critical(const HomogeneousPotential& v, Eigen::VectorXd& q, double target,
                     int max_iter) {
  int d = v.dim();
  double lambda = 1e-4;
  auto residual = [&](const Eigen::VectorXd& x, Eigen::VectorXd& f) {
    f.resize(d + 1);
    f.head(d) = v.gradient(x);
    f[d] = 0.5 * (x.squaredNorm() - 1.0);
  };
  Eigen::VectorXd f, f_new;
  residual(q, f);
  for (int it = 0; it < max_iter; ++it) {
    if (f.head(d).norm() <= target && std::abs(f[d]) <= 1e-13) {
      q.normalize();
      return true;
    }
    Eigen::MatrixXd jac(d + 1, d);
    jac.topRows(d) = v.hessian(q);
    jac.bottomRows(1) = q.transpose();
    Eigen::MatrixXd normal = jac.transpose() * jac;
    Eigen::VectorXd rhs = -jac.transpose() * f;
    bool stepped = false;
    for (int k = 0; k < 30; ++k) {
      Eigen::MatrixXd damped = normal + lambda * Eigen::MatrixXd::Identity(d, d);
      Eigen::VectorXd step = damped.ldlt().solve(rhs);
      Eigen::VectorXd cand = q + step;
      residual(cand, f_new);
      if (f_new.norm() < f.norm()) {
        q = cand;
        f = f_new;
        lambda = std::max(lambda / 3.0, 1e-12);
        stepped = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!stepped) break;  // stagnated
  }
  if (f.head(d).norm() <= target && std::abs(f[d]) <= 1e-12) {
    q.normalize();
    return true;
  }
  return false;
}

}  // namespace

CriticalSet find_critical_points(const HomogeneousPotential& v, const SearchParams& params) {
  CriticalSet out;
  out.resolution = params.resolution;
  int d = v.dim();
  auto grid = sphere_grid(d, params.resolution);

  double sup_grad = 0.0;
  std::vector<double> grad_norms(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    grad_norms[i] = v.gradient(grid[i]).norm();
    sup_grad = std::max(sup_grad, grad_norms[i]);
  }
  double target = 0.1 * params.refine_tol * std::max(1.0, sup_grad);

  std::vector<Eigen::VectorXd> converged;
  for (size_t i = 0; i < grid.size(); ++i) {
    double hess_scale = v.hessian(grid[i]).norm();  // Frobenius
    double threshold = (d == 1) ? target : 4.0 * (hess_scale + 1.0) * params.resolution;
    if (grad_norms[i] > threshold) continue;
    Eigen::VectorXd q = grid[i];
    if (refine_critical(v, q, target, params.max_newton))
      converged.push_back(q);
    else
      out.unconverged.push_back(grid[i]);
  }

  // Antipodal closure: grad V(-q) = (-1)^{r-1} grad V(q), so -q is critical
  // exactly when q is.
  size_t n0 = converged.size();
  for (size_t i = 0; i < n0; ++i) converged.push_back(-converged[i]);

  std::sort(converged.begin(), converged.end(), lex_less);
  out.cluster_radius = std::max(10.0 * params.refine_tol, 0.5 * params.resolution);

  // Single-linkage clustering at the radius above, then one representative
  // (smallest residual) per cluster.
  std::vector<int> comp(converged.size(), -1);
  int ncomp = 0;
  for (size_t i = 0; i < converged.size(); ++i) {
    if (comp[i] >= 0) continue;
    comp[i] = ncomp;
    std::vector<size_t> stack{i};
    while (!stack.empty()) {
      size_t a = stack.back();
      stack.pop_back();
      for (size_t b = 0; b < converged.size(); ++b) {
        if (comp[b] >= 0) continue;
        if ((converged[a] - converged[b]).norm() <= out.cluster_radius) {
          comp[b] = ncomp;
          stack.push_back(b);
        }
      }
    }
    ++ncomp;
  }
  for (int c = 0; c < ncomp; ++c) {
    Eigen::VectorXd best;
    double best_res = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < converged.size(); ++i) {
      if (comp[i] != c) continue;
      double res = v.gradient(converged[i]).norm();
      if (res < best_res || (res == best_res && lex_less(converged[i], best))) {
        best_res = res;
        best = converged[i];
      }
    }
    out.points.push_back(best);
    out.residuals.push_back(best_res);
  }
  return out;
}

double shell_critical_distance(const CriticalSet& k0, const Eigen::VectorXd& q) {
  if (k0.points.empty()) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (const auto& dir : k0.points) {
    double t = std::clamp(q.dot(dir), 0.75, 8.0 / 3.0);
    best = std::min(best, (q - t * dir).norm());
  }
  return best;
}

namespace {

double sphere_critical_distance(const CriticalSet& k0, const Eigen::VectorXd& q) {
  if (k0.points.empty()) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : k0.points) best = std::min(best, (q - p).norm());
  return best;
}

}  // namespace

AssumptionReport check_assumption(const HomogeneousPotential& v, const SearchParams& params) {
  if (v.degree() <= 2)
    throw std::domain_error("assumption check needs degree r > 2");
  AssumptionReport rep;
  rep.resolution = params.resolution;
  rep.critical_set = find_critical_points(v, params);
  if (!rep.critical_set.unconverged.empty()) {
    std::ostringstream msg;
    msg << rep.critical_set.unconverged.size()
        << " flagged sphere cells did not converge under Newton refinement";
    throw NonConvergence(msg.str());
  }

  const auto& k0 = rep.critical_set;
  for (size_t i = 0; i < k0.points.size(); ++i) {
    TraceSplit ts = trace_split(v.poly(), k0.points[i]);
    if (ts.tr_minus <= 1e-9) rep.failures.push_back(k0.points[i]);
  }
  rep.holds = rep.failures.empty();

  if (k0.points.empty()) {
    rep.epsilon0_infinite = true;
    rep.epsilon1 = 2.0 * 8.0 / 3.0;  // shell diameter
  } else {
    double eps0 = std::numeric_limits<double>::infinity();
    for (const auto& p : k0.points) {
      TraceSplit ts = trace_split(v.poly(), p);
      eps0 = std::min(eps0, ts.tr_minus / (1.0 + ts.tr_plus));
    }
    rep.epsilon0 = eps0;
  }

  // Sphere sample shared by the epsilon searches.
  auto grid = sphere_grid(v.dim(), params.resolution);
  std::vector<double> dist(grid.size()), ratio(grid.size()), gnorm(grid.size());
  double eps3 = 0.0;
  for (size_t i = 0; i < grid.size(); ++i) {
    dist[i] = sphere_critical_distance(k0, grid[i]);
    TraceSplit ts = trace_split(v.poly(), grid[i]);
    ratio[i] = ts.tr_minus / (1.0 + ts.tr_plus);
    gnorm[i] = v.gradient(grid[i]).norm();
    eps3 = std::max(eps3, ts.tr_minus);
  }
  rep.epsilon3 = eps3;

  if (!k0.points.empty()) {
    // Largest dyadic radius such that every sample within it of K0 keeps the
    // ratio above epsilon0/2.
    double floor_radius = std::max(4.0 * params.resolution, std::pow(2.0, -20));
    for (double rho = 1.0; rho >= floor_radius; rho *= 0.5) {
      bool ok = true;
      for (size_t i = 0; i < grid.size() && ok; ++i)
        if (dist[i] <= rho && ratio[i] < 0.5 * rep.epsilon0 - 1e-12) ok = false;
      if (ok) {
        rep.epsilon1 = rho;
        break;
      }
    }
  }

  double eps2 = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < grid.size(); ++i)
    if (dist[i] >= rep.epsilon1) eps2 = std::min(eps2, gnorm[i]);
  if (std::isinf(eps2)) eps2 = 0.0;  // every sample sits inside the epsilon1 ball
  rep.epsilon2 = eps2;
  return rep;
}

CompactnessReport compact_resolvent_indicator(const HomogeneousPotential& v, double delta,
                                              HessianNorm conv, int ray_samples, double tol) {
  CompactnessReport rep;
  rep.delta = delta;
  rep.convention = conv;
  rep.lambdas = {2.0, 4.0, 8.0, 16.0};
  rep.ray_samples = ray_samples;

  GrowthReport growth = growth_exponent(v, delta, conv);
  rep.exponent = growth.exponent;
  rep.m_delta = growth.m_delta;
  rep.m_delta_argmin = growth.argmin;

  int d = v.dim();
  double res = (d == 1) ? 1.0 : (d == 2 ? 2.0 * M_PI / ray_samples : std::sqrt(4.0 * M_PI / ray_samples));
  auto dirs = sphere_grid(d, res);

  // Degeneracy is relative: pattern search never returns an exact zero, so
  // compare the sphere minimum against the sphere maximum of f_delta.
  double f_max = 0.0;
  for (const auto& q : dirs) f_max = std::max(f_max, f_delta(v.poly(), q, delta, conv));
  if (rep.m_delta <= 1e-9 * std::max(1.0, f_max))
    throw HypothesisViolated(
        "f_delta vanishes somewhere on the sphere; the compactness criterion is empty");
  rep.worst_ratio = std::numeric_limits<double>::infinity();
  for (const auto& q : dirs) {
    for (double lam : rep.lambdas) {
      double lhs = f_delta(v.poly(), lam * q, delta, conv);
      double bound = rep.m_delta * std::pow(lam, rep.exponent);
      double r = lhs / bound;
      rep.worst_ratio = std::min(rep.worst_ratio, r);
      if (lhs < bound * (1.0 - tol)) rep.violations.push_back(lam * q);
    }
  }
  return rep;
}

}  // namespace kfp

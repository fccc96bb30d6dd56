#include "kfp/states.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace kfp {

double mollifier_bump(double t) {
  if (std::abs(t) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - t * t));
}

Eigen::VectorXd q_bump_values(const Discretization& disc, double center, double width) {
  if (disc.d != 1) throw std::invalid_argument("q_bump_values expects a 1-d grid");
  Eigen::VectorXd vals(disc.nq);
  for (int i = 0; i < disc.nq; ++i)
    vals(i) = mollifier_bump((disc.qgrid(i) - center) / width);
  return vals;
}

Eigen::VectorXd q_gaussian_values(const Discretization& disc, double center, double sigma) {
  if (disc.d != 1) throw std::invalid_argument("q_gaussian_values expects a 1-d grid");
  Eigen::VectorXd vals(disc.nq);
  for (int i = 0; i < disc.nq; ++i) {
    double t = (disc.qgrid(i) - center) / sigma;
    vals(i) = std::exp(-0.5 * t * t);
  }
  return vals;
}

Eigen::VectorXd mode_state(const Discretization& disc, const Eigen::VectorXd& qvals, int mode) {
  if (disc.d != 1) throw std::invalid_argument("mode_state expects a 1-d grid");
  if (qvals.size() != disc.nq) throw std::invalid_argument("q-profile size mismatch");
  if (mode < 0 || mode >= disc.np) throw std::invalid_argument("Hermite mode out of range");
  Eigen::VectorXd u = Eigen::VectorXd::Zero(disc.dim());
  for (int iq = 0; iq < disc.nq; ++iq) u(iq * disc.np + mode) = qvals(iq);
  double n = weighted_norm(u, disc);
  if (n == 0.0) throw std::invalid_argument("q-profile vanishes on the grid");
  return u / n;
}

std::vector<Eigen::VectorXd> random_interior_states(const Discretization& disc, int count,
                                                    unsigned seed, double margin) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double cut = (1.0 - margin) * disc.box;
  std::vector<bool> interior(disc.q_points());
  for (int iq = 0; iq < disc.q_points(); ++iq)
    interior[iq] = disc.q_point(iq).cwiseAbs().maxCoeff() <= cut;

  std::vector<Eigen::VectorXd> states;
  states.reserve(count);
  for (int s = 0; s < count; ++s) {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(disc.dim());
    for (int iq = 0; iq < disc.q_points(); ++iq)
      for (int ip = 0; ip < disc.p_modes(); ++ip) {
        double x = unif(rng);  // always draw: keeps the stream layout-stable
        if (interior[iq]) u(iq * disc.p_modes() + ip) = x;
      }
    double n = weighted_norm(u, disc);
    if (n == 0.0) throw std::invalid_argument("interior margin leaves no grid points");
    states.push_back(u / n);
  }
  return states;
}

std::vector<Eigen::VectorXd> random_smooth_states(const Discretization& disc, int count,
                                                  unsigned seed, int max_mode) {
  if (disc.d != 1) throw std::invalid_argument("random_smooth_states expects a 1-d grid");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int top = std::min(max_mode, disc.np - 1);

  std::vector<Eigen::VectorXd> states;
  states.reserve(count);
  for (int s = 0; s < count; ++s) {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(disc.dim());
    int bumps = 2 + static_cast<int>(3.0 * unif(rng));
    for (int b = 0; b < bumps; ++b) {
      // keep 7+ sigmas inside the box so the state and its products with
      // smooth multipliers stay spectrally resolved at moderate grids
      double center = (2.0 * unif(rng) - 1.0) * 0.30 * disc.box;
      double sigma = (0.06 + 0.03 * unif(rng)) * disc.box;
      int mode = static_cast<int>((top + 1) * unif(rng));
      double amp = 2.0 * unif(rng) - 1.0;
      Eigen::VectorXd qv = q_gaussian_values(disc, center, sigma);
      for (int iq = 0; iq < disc.nq; ++iq) u(iq * disc.np + mode) += amp * qv(iq);
    }
    double n = weighted_norm(u, disc);
    if (n == 0.0) { --s; continue; }
    states.push_back(u / n);
  }
  return states;
}

double weighted_norm(const Eigen::VectorXd& u, const Discretization& disc) {
  double cell = std::pow(disc.dq, disc.d);
  return std::sqrt(cell * u.squaredNorm());
}

}  // namespace kfp

#include "kfp/partition.hpp"

#include <cmath>
#include <stdexcept>

namespace kfp {

DyadicPartition::DyadicPartition(int max_level) : max_level_(max_level) {}

std::vector<int> DyadicPartition::active(double r) const {
  std::vector<int> out;
  if (r < pair_.outer()) out.push_back(-1);  // chi support
  if (r <= 0.0) return out;
  // phi(2^-j r) != 0 needs plateau < 2^-j r < 2*outer.
  double lo = std::log2(r / (2.0 * pair_.outer()));
  double hi = std::log2(r / pair_.plateau());
  int j0 = std::max(0, static_cast<int>(std::ceil(lo)));
  int j1 = std::min(max_level_, static_cast<int>(std::floor(hi)));
  for (int j = j0; j <= j1; ++j) out.push_back(j);
  return out;
}

double DyadicPartition::normalizer(double r) const {
  double c = pair_.chi(r);
  double d = c * c;
  for (int j : active(r)) {
    if (j < 0) continue;
    double p = pair_.phi(std::ldexp(r, -j));
    d += p * p;
  }
  return d;
}

double DyadicPartition::normalizer_deriv(double r) const {
  double d = 2.0 * pair_.chi(r) * pair_.chi_deriv(r);
  for (int j : active(r)) {
    if (j < 0) continue;
    double s = std::ldexp(r, -j);
    d += 2.0 * pair_.phi(s) * pair_.phi_deriv(s) * std::ldexp(1.0, -j);
  }
  return d;
}

double DyadicPartition::chi_radial(int j, double r) const {
  if (j < -1 || j > max_level_) throw std::out_of_range("dyadic level out of range");
  double num = (j == -1) ? pair_.chi(r) : pair_.phi(std::ldexp(r, -j));
  if (num == 0.0) return 0.0;
  return num / std::sqrt(normalizer(r));
}

double DyadicPartition::chi_radial_deriv(int j, double r) const {
  if (j < -1 || j > max_level_) throw std::out_of_range("dyadic level out of range");
  double num, dnum;
  if (j == -1) {
    num = pair_.chi(r);
    dnum = pair_.chi_deriv(r);
  } else {
    double s = std::ldexp(r, -j);
    num = pair_.phi(s);
    dnum = pair_.phi_deriv(s) * std::ldexp(1.0, -j);
  }
  if (num == 0.0 && dnum == 0.0) return 0.0;
  double d = normalizer(r);
  double dd = normalizer_deriv(r);
  double sq = std::sqrt(d);
  return dnum / sq - 0.5 * num * dd / (d * sq);
}

Eigen::VectorXd DyadicPartition::chi_grad(int j, const Eigen::VectorXd& q) const {
  double r = q.norm();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(q.size());
  if (r == 0.0) return g;  // radial profiles are flat at the origin
  g = chi_radial_deriv(j, r) / r * q;
  return g;
}

double DyadicPartition::sum_squares(const Eigen::VectorXd& q) const {
  double r = q.norm();
  double s = 0.0;
  for (int j : active(r)) {
    double c = chi_radial(j, r);
    s += c * c;
  }
  return s;
}

double select_nu(double r) {
  if (r <= 2.0) throw std::domain_error("nu selector needs degree r > 2");
  double nu = (r < 10.0) ? 3.0 / 16.0 + 5.0 / (16.0 * (r - 1.0)) : 5.0 / 24.0;
  assert_nu_admissible(r, nu);
  return nu;
}

void assert_nu_admissible(double r, double nu, double margin) {
  if (r <= 2.0) throw std::domain_error("nu admissibility needs degree r > 2");
  double lower = std::max(1.0 / 6.0, 1.0 / 8.0 + 3.0 / (8.0 * (r - 1.0)));
  double upper = 0.25 + 1.0 / (4.0 * (r - 1.0));
  if (!(nu > lower + margin && nu < upper - margin))
    throw std::domain_error("nu=" + std::to_string(nu) + " violates the admissible interval (" +
                            std::to_string(lower) + ", " + std::to_string(upper) + ") for r=" +
                            std::to_string(r));
}

double dyadic_h(double r, int j) {
  if (r <= 2.0) throw std::domain_error("dyadic scale needs degree r > 2");
  return std::pow(2.0, -2.0 * (r - 1.0) * j);
}

double dyadic_H(double r, int j) {
  // h^{-1/2 + 1/(2(r-1))} collapses to 2^{j(r-2)}; the base-2 form keeps
  // integer exponents exact.
  if (r <= 2.0) throw std::domain_error("dyadic scale needs degree r > 2");
  return std::pow(2.0, (r - 2.0) * j);
}

DominationRatios error_domination_ratios(double r, double nu, int j) {
  if (j <= 0) throw std::domain_error("domination ratios need j >= 1 (h=1 degenerates at j=0)");
  double h = dyadic_h(r, j);
  double H = dyadic_H(r, j);
  double ln_inv_h = std::log(1.0 / h);
  double gain = H / std::pow(std::log(H), 2);
  DominationRatios out;
  double commutator = std::pow(ln_inv_h * ln_inv_h * std::pow(h, 2.0 * nu), 2) / h;
  double taylor = std::pow(ln_inv_h, -2.0) * std::pow(h, 1.0 / (r - 1.0) - 2.0 * nu);
  out.commutator_ratio = commutator / gain;
  out.taylor_ratio = taylor / gain;
  return out;
}

FinePartition::FinePartition(double h, double nu, int d) : h_(h), nu_(nu), d_(d) {
  if (!(h > 0.0 && h < 1.0)) throw std::domain_error("fine partition needs 0 < h < 1");
  if (d != 1 && d != 2) throw std::domain_error("fine partition supports d in {1,2}");
  rho_ = std::abs(std::log(h)) * std::pow(h, nu);
  if (rho_ > kShellOuter - kShellInner)
    throw std::domain_error("patch radius " + std::to_string(rho_) +
                            " exceeds the shell width; partition degenerates");
  spacing_ = 1.5 * rho_;
  double bound = kShellOuter + 2.0 * rho_;
  if (d == 1) {
    int kmax = static_cast<int>(std::floor(bound / spacing_));
    for (int k = -kmax; k <= kmax; ++k) {
      Eigen::VectorXd c(1);
      c << spacing_ * k;
      centers_.push_back(c);
    }
  } else {
    // Hexagonal lattice: nearest-neighbor distance = spacing, covering
    // radius = spacing/sqrt(3) < rho.
    double row = spacing_ * std::sqrt(3.0) / 2.0;
    int k2max = static_cast<int>(std::floor(bound / row)) + 1;
    for (int k2 = -k2max; k2 <= k2max; ++k2) {
      double y = row * k2;
      double xoff = 0.5 * spacing_ * k2;
      int k1lo = static_cast<int>(std::floor((-bound - xoff) / spacing_)) - 1;
      int k1hi = static_cast<int>(std::ceil((bound - xoff) / spacing_)) + 1;
      for (int k1 = k1lo; k1 <= k1hi; ++k1) {
        Eigen::VectorXd c(2);
        c << spacing_ * k1 + xoff, y;
        double rad = c.norm();
        if (rad < kShellInner - 2.0 * rho_ || rad > kShellOuter + 2.0 * rho_) continue;
        centers_.push_back(c);
      }
    }
  }
}

double FinePartition::profile(double t) const {
  if (t <= 0.5) return t < 0.0 ? 0.0 : 1.0;
  if (t >= 1.0) return 0.0;
  return 1.0 - SmoothRamp::instance().value(2.0 * t - 1.0);
}

double FinePartition::profile_deriv(double t) const {
  if (t <= 0.5 || t >= 1.0) return 0.0;
  return -2.0 * SmoothRamp::instance().deriv(2.0 * t - 1.0);
}

double FinePartition::raw(int k, const Eigen::VectorXd& x) const {
  return profile((x - centers_[k]).norm() / rho_);
}

Eigen::VectorXd FinePartition::raw_grad(int k, const Eigen::VectorXd& x) const {
  Eigen::VectorXd diff = x - centers_[k];
  double t = diff.norm() / rho_;
  if (t <= 0.5 || t >= 1.0 || diff.norm() == 0.0) return Eigen::VectorXd::Zero(d_);
  return profile_deriv(t) / (rho_ * diff.norm()) * diff;
}

std::vector<int> FinePartition::active_centers(const Eigen::VectorXd& x) const {
  std::vector<int> out;
  for (int k = 0; k < size(); ++k)
    if ((x - centers_[k]).norm() < rho_) out.push_back(k);
  return out;
}

double FinePartition::theta(int k, const Eigen::VectorXd& x) const {
  double num = raw(k, x);
  if (num == 0.0) return 0.0;
  double d = 0.0;
  for (int a : active_centers(x)) {
    double v = raw(a, x);
    d += v * v;
  }
  return num / std::sqrt(d);
}

Eigen::VectorXd FinePartition::theta_grad(int k, const Eigen::VectorXd& x) const {
  double num = raw(k, x);
  Eigen::VectorXd dnum = raw_grad(k, x);
  if (num == 0.0 && dnum.isZero()) return Eigen::VectorXd::Zero(d_);
  double d = 0.0;
  Eigen::VectorXd dd = Eigen::VectorXd::Zero(d_);
  for (int a : active_centers(x)) {
    double v = raw(a, x);
    d += v * v;
    dd += 2.0 * v * raw_grad(a, x);
  }
  double sq = std::sqrt(d);
  return dnum / sq - 0.5 * num / (d * sq) * dd;
}

double FinePartition::sum_squares(const Eigen::VectorXd& x) const {
  double s = 0.0;
  for (int a : active_centers(x)) {
    double t = theta(a, x);
    s += t * t;
  }
  return s;
}

double FinePartition::gradient_constant() const {
  // Probe a handful of patches along radial lines through the overlap zone.
  double sup = 0.0;
  for (int probe : {0, size() / 4, size() / 2, 3 * size() / 4, size() - 1}) {
    for (int i = 0; i <= 400; ++i) {
      double t = 0.45 + 0.55 * i / 400.0;
      for (int dir = 0; dir < 2 * d_; ++dir) {
        Eigen::VectorXd x = centers_[probe];
        int axis = dir % d_;
        x[axis] += (dir < d_ ? t : -t) * rho_;
        sup = std::max(sup, theta_grad(probe, x).norm());
      }
    }
  }
  return sup * rho_;
}

}  // namespace kfp

#include "kfp/sphere.hpp"

#include <cmath>
#include <stdexcept>

namespace kfp {

std::vector<Eigen::VectorXd> sphere_grid(int d, double resolution) {
  if (resolution <= 0) throw std::invalid_argument("sphere resolution must be positive");
  std::vector<Eigen::VectorXd> pts;
  if (d == 1) {
    Eigen::VectorXd plus(1), minus(1);
    plus << 1.0;
    minus << -1.0;
    pts.push_back(plus);
    pts.push_back(minus);
  } else if (d == 2) {
    int n = std::max(8, static_cast<int>(std::ceil(2.0 * M_PI / resolution)));
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
      double a = 2.0 * M_PI * i / n;
      Eigen::VectorXd q(2);
      q << std::cos(a), std::sin(a);
      pts.push_back(q);
    }
  } else if (d == 3) {
    // Fibonacci lattice: N points have mean spacing ~ sqrt(4*pi/N).
    int n = std::max(32, static_cast<int>(std::ceil(4.0 * M_PI / (resolution * resolution))));
    pts.reserve(n);
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int i = 0; i < n; ++i) {
      double z = 1.0 - (2.0 * i + 1.0) / n;
      double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      double a = 2.0 * M_PI * i / golden;
      Eigen::VectorXd q(3);
      q << rho * std::cos(a), rho * std::sin(a), z;
      pts.push_back(q);
    }
  } else {
    throw std::invalid_argument("sphere_grid supports d <= 3");
  }
  return pts;
}

namespace {

// Orthonormal tangent basis at q.
std::vector<Eigen::VectorXd> tangent_frame(const Eigen::VectorXd& q) {
  int d = static_cast<int>(q.size());
  std::vector<Eigen::VectorXd> frame;
  if (d == 1) return frame;
  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(d, d);
  for (int i = 0; i < d && static_cast<int>(frame.size()) < d - 1; ++i) {
    Eigen::VectorXd v = basis.col(i) - q * q.dot(basis.col(i));
    for (const auto& t : frame) v -= t * t.dot(v);
    double n = v.norm();
    if (n > 1e-8) frame.push_back(v / n);
  }
  return frame;
}

}  // namespace

SphereMin refine_on_sphere(const Eigen::VectorXd& start, double initial_step,
                           const std::function<double(const Eigen::VectorXd&)>& f) {
  SphereMin best{f(start), start};
  int d = static_cast<int>(start.size());
  if (d == 1) return best;  // sphere is discrete
  double step = initial_step;
  while (step > 1e-12) {
    auto frame = tangent_frame(best.argmin);
    bool moved = false;
    for (const auto& t : frame) {
      for (double s : {step, -step}) {
        Eigen::VectorXd cand = (best.argmin + s * t).normalized();
        double v = f(cand);
        if (v < best.value) {
          best = {v, cand};
          moved = true;
        }
      }
    }
    if (!moved) step *= 0.5;
  }
  return best;
}

SphereMin minimize_over_sphere(int d, double resolution,
                               const std::function<double(const Eigen::VectorXd&)>& f) {
  auto grid = sphere_grid(d, resolution);
  SphereMin best{f(grid.front()), grid.front()};
  for (const auto& q : grid) {
    double v = f(q);
    if (v < best.value) best = {v, q};
  }
  return refine_on_sphere(best.argmin, resolution, f);
}

std::vector<SphereMin> scan_below(int d, double resolution, double keep_below,
                                  const std::function<double(const Eigen::VectorXd&)>& f) {
  auto grid = sphere_grid(d, resolution);
  std::vector<SphereMin> out;
  for (const auto& q : grid) {
    double v = f(q);
    if (v < keep_below) out.push_back(refine_on_sphere(q, resolution, f));
  }
  return out;
}

}  // namespace kfp
